#pragma once

namespace diffalg {

/// Process-wide cap on the derivative order any derivation may produce.
/// Exceeding it raises Errc::OrderCapExceeded.
int order_cap();
void set_order_cap(int cap);

inline constexpr int kDefaultOrderCap = 12;
inline constexpr int kMinOrderCap = 4;

}  // namespace diffalg
