#include "dense.hpp"

namespace oracle {

mpq_class reduce(std::uint32_t p, mpq_class c) {
  c.canonicalize();
  if (p == 0) return c;
  mpz_class num = c.get_num() % p, den = c.get_den() % p;
  if (num < 0) num += p;
  if (den < 0) den += p;
  mpz_class inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
  mpz_class r = (num * inv) % p;
  return mpq_class(r);
}

Dense product(const Dense& x, const Dense& y) {
  Dense out(x.p, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < y.cols; ++j) {
      mpq_class s = 0;
      for (std::size_t k = 0; k < x.cols; ++k) s += x(i, k) * y(k, j);
      out(i, j) = reduce(x.p, s);
    }
  return out;
}

Dense kronecker(const Dense& x, const Dense& y) {
  Dense out(x.p, x.rows * y.rows, x.cols * y.cols);
  for (std::size_t a = 0; a < x.rows; ++a)
    for (std::size_t b = 0; b < x.cols; ++b)
      for (std::size_t i = 0; i < y.rows; ++i)
        for (std::size_t j = 0; j < y.cols; ++j) out(i + a * y.rows, j + b * y.cols) = reduce(x.p, x(a, b) * y(i, j));
  return out;
}

long rank(Dense m) {
  long r = 0;
  for (std::size_t c = 0; c < m.cols && static_cast<std::size_t>(r) < m.rows; ++c) {
    std::size_t piv = static_cast<std::size_t>(r);
    while (piv < m.rows && m(piv, c) == 0) ++piv;
    if (piv == m.rows) continue;
    for (std::size_t k = 0; k < m.cols; ++k) std::swap(m(piv, k), m(static_cast<std::size_t>(r), k));
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == static_cast<std::size_t>(r) || m(i, c) == 0) continue;
      const mpq_class f = m(i, c) / m(static_cast<std::size_t>(r), c);
      for (std::size_t k = 0; k < m.cols; ++k) m(i, k) = reduce(m.p, m(i, k) - f * m(static_cast<std::size_t>(r), k));
    }
    ++r;
  }
  return r;
}

}  // namespace oracle
