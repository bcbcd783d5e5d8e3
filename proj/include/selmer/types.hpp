#pragma once

#include <array>
#include <string>
#include <string_view>

namespace selmer {

/// The six isometry types of the image of the rational part of the Selmer
/// group: A(i), A(ii) have alternating 2-adic space, B(i)-B(iv) do not.
enum class QType { A1, A2, B1, B2, B3, B4 };

inline constexpr std::array<QType, 6> kAllTypes{QType::A1, QType::A2, QType::B1,
                                                QType::B2, QType::B3, QType::B4};

/// "A(i)", "A(ii)", "B(i)", ...
std::string_view type_label(QType t);
/// "A1", "A2", "B1", ...
std::string_view type_code(QType t);
/// Accepts either spelling, case-insensitive. Throws std::invalid_argument.
QType parse_type(std::string_view text);

inline bool is_type_a(QType t) { return t == QType::A1 || t == QType::A2; }

} // namespace selmer
