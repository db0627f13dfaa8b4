#pragma once

namespace bo2d {

/// Complete elliptic integral of the second kind,
///   E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 t) dt,
/// in the modulus convention: E(0) = pi/2, E(1) = 1.
/// Throws DomainError unless 0 <= k <= 1.
double ellip_e(double modulus);

/// Same integral taking the complementary modulus k' = sqrt(1 - k^2), which
/// keeps full precision near k = 1.
double ellip_e_complement(double complementary_modulus);

/// Modulus of the axisymmetric kernel, 2 sqrt(r r') / (r + r'); 0 when r = r' = 0.
double kernel_modulus(double r, double rp);

/// Complementary modulus |r - r'| / (r + r'), computed without cancellation.
double kernel_complement(double r, double rp);

}  // namespace bo2d
