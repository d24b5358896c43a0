#include <sstream>

#include "homlab/errors.hpp"
#include "homlab/homogeneity.hpp"

namespace homlab::homog {

SpectralSignature spectral_signature(const FiniteGraph& g) {
  if (g.order() > kGroupLimit) throw SizeLimit("characteristic polynomial", kGroupLimit);
  const int n = g.order();
  SpectralSignature sig;
  if (n == 0) {
    sig.coefficients = {1};
    return sig;
  }
  auto a = [&](int i, int j) -> long { return g.adjacent(i, j) ? 1 : 0; };

  // Berkowitz: the characteristic polynomial of the leading (r+1)x(r+1)
  // block is T_r times that of the leading r x r block, where T_r is the
  // lower-triangular Toeplitz matrix with first column
  // (1, -a_rr, -R C, -R M C, ..., -R M^(r-1) C).
  std::vector<BigInt> poly{1, -BigInt(a(0, 0))};
  for (int r = 1; r < n; ++r) {
    const auto rs = static_cast<std::size_t>(r);
    std::vector<BigInt> column(rs);  // M^k C
    for (int i = 0; i < r; ++i) column[static_cast<std::size_t>(i)] = a(i, r);
    std::vector<BigInt> toeplitz(rs + 2);
    toeplitz[0] = 1;
    toeplitz[1] = -BigInt(a(r, r));
    for (std::size_t k = 0; k < rs; ++k) {
      BigInt dot = 0;
      for (int j = 0; j < r; ++j) dot += a(r, j) * column[static_cast<std::size_t>(j)];
      toeplitz[k + 2] = -dot;
      if (k + 1 < rs) {
        std::vector<BigInt> next(rs);
        for (int i = 0; i < r; ++i) {
          BigInt sum = 0;
          for (int j = 0; j < r; ++j) {
            if (a(i, j) != 0) sum += column[static_cast<std::size_t>(j)];
          }
          next[static_cast<std::size_t>(i)] = std::move(sum);
        }
        column = std::move(next);
      }
    }
    std::vector<BigInt> next_poly(rs + 2, 0);
    for (std::size_t i = 0; i < rs + 2; ++i) {
      for (std::size_t j = 0; j <= i && j < poly.size(); ++j) next_poly[i] += toeplitz[i - j] * poly[j];
    }
    poly = std::move(next_poly);
  }
  sig.coefficients = std::move(poly);
  return sig;
}

std::string to_string(const SpectralSignature& s) {
  std::ostringstream out;
  const int n = static_cast<int>(s.coefficients.size()) - 1;
  bool first = true;
  for (int i = 0; i <= n; ++i) {
    const BigInt& c = s.coefficients[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const int power = n - i;
    const BigInt magnitude = c < 0 ? BigInt(-c) : c;
    if (first) {
      if (c < 0) out << '-';
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    if (magnitude != 1 || power == 0) out << magnitude;
    if (power >= 1) out << 'x';
    if (power >= 2) out << '^' << power;
    first = false;
  }
  if (first) out << '0';
  return out.str();
}

}  // namespace homlab::homog
