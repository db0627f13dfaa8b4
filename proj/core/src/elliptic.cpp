#include "bo2d/elliptic.hpp"

#include <cmath>
#include <numbers>

#include "bo2d/error.hpp"

namespace bo2d {

double ellip_e_complement(double kc) {
  if (!(kc >= 0.0 && kc <= 1.0)) throw DomainError("ellip_e: complementary modulus outside [0, 1]");
  if (kc == 0.0) return 1.0;
  if (kc == 1.0) return std::numbers::pi / 2.0;
  // Gauss AGM with the c_n sum; k^2 = (1 - kc)(1 + kc) avoids cancellation.
  double a = 1.0;
  double b = kc;
  double c2 = (1.0 - kc) * (1.0 + kc);
  double sum = 0.5 * c2;
  double pow2 = 0.5;
  for (int it = 0; it < 64; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    const double cn = 0.5 * (a - b);
    pow2 *= 2.0;
    sum += pow2 * cn * cn;
    a = an;
    b = bn;
    if (cn * cn <= 1e-34 * a * a) break;
  }
  const double k = std::numbers::pi / (2.0 * a);
  return k * (1.0 - sum);
}

double ellip_e(double modulus) {
  if (!(modulus >= 0.0 && modulus <= 1.0)) throw DomainError("ellip_e: modulus outside [0, 1]");
  if (modulus == 1.0) return 1.0;
  return ellip_e_complement(std::sqrt((1.0 - modulus) * (1.0 + modulus)));
}

double kernel_modulus(double r, double rp) {
  if (r < 0.0 || rp < 0.0) throw DomainError("kernel_modulus: negative radius");
  const double s = r + rp;
  if (s == 0.0) return 0.0;
  return std::min(1.0, 2.0 * std::sqrt(r * rp) / s);
}

double kernel_complement(double r, double rp) {
  if (r < 0.0 || rp < 0.0) throw DomainError("kernel_complement: negative radius");
  const double s = r + rp;
  if (s == 0.0) return 1.0;
  return std::abs(r - rp) / s;
}

}  // namespace bo2d
