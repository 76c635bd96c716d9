#ifndef NKOSZUL_FIELD_HPP
#define NKOSZUL_FIELD_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace nkoszul {

using Scalar = std::int64_t;
using Index = Eigen::Index;
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Arithmetic in F_p for a prime p < 2^31. Residues live in [0, p).
class PrimeField {
 public:
  static constexpr Scalar kDefaultModulus = 101;

  explicit PrimeField(Scalar p = kDefaultModulus) : p_(p) {
    if (p < 2 || p >= (Scalar{1} << 31)) {
      throw std::invalid_argument("modulus must lie in [2, 2^31): " + std::to_string(p));
    }
    for (Scalar d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw std::invalid_argument("modulus is not prime: " + std::to_string(p));
    }
  }

  Scalar modulus() const { return p_; }

  Scalar reduce(Scalar v) const {
    v %= p_;
    return v < 0 ? v + p_ : v;
  }
  Scalar add(Scalar a, Scalar b) const { return (a + b) % p_; }
  Scalar sub(Scalar a, Scalar b) const { return (a - b + p_) % p_; }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar mul(Scalar a, Scalar b) const { return (a * b) % p_; }

  Scalar inv(Scalar a) const {
    a = reduce(a);
    if (a == 0) throw std::domain_error("division by zero in F_" + std::to_string(p_));
    Scalar result = 1, base = a, e = p_ - 2;
    while (e > 0) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  template <typename Derived>
  Matrix reduce(const Eigen::MatrixBase<Derived>& m) const {
    const Scalar p = p_;
    return m.unaryExpr([p](Scalar v) { v %= p; return v < 0 ? v + p : v; }).eval();
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.p_ == b.p_; }

 private:
  Scalar p_;
};

}  // namespace nkoszul

#endif  // NKOSZUL_FIELD_HPP
