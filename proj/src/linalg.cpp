#include "diffalg/linalg.hpp"

#include <sstream>

namespace diffalg {

KMatrix to_kmatrix(const QMatrix& m) {
  KMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = RatFunc(m(i, j));
  return r;
}

std::optional<QMatrix> to_qmatrix(const KMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (!m(i, j).is_constant()) return std::nullopt;
      r(i, j) = m(i, j).constant_value();
    }
  return r;
}

std::string to_string(const KMatrix& m) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << m(i, j).to_string();
    out << "]";
  }
  out << "]";
  return out.str();
}

std::optional<KMatrix> random_invertible_combination(const std::vector<KMatrix>& basis,
                                                     std::uint64_t seed, int attempts) {
  if (basis.empty()) return std::nullopt;
  std::mt19937_64 rng(seed);
  for (int a = 0; a < attempts; ++a) {
    // First attempt uses the plain sum; later ones widen the coefficient range.
    std::uniform_int_distribution<long> dist(-3 - 4 * a, 3 + 4 * a);
    KMatrix m(basis[0].rows(), basis[0].cols());
    for (const auto& b : basis) {
      long c = a == 0 ? 1 : dist(rng);
      if (c != 0) m = m + RatFunc(c) * b;
    }
    if (!determinant(m).is_zero()) return m;
  }
  return std::nullopt;
}

}  // namespace diffalg
