#pragma once

namespace levylab {

struct SignedLogGamma {
  double log_abs;  // log |Gamma(z)|
  int sign;        // sign of Gamma(z)
};

// Gamma on the real line away from the poles 0, -1, -2, ...; negative
// arguments go through the reflection formula. Throws std::domain_error at a pole.
SignedLogGamma log_gamma(double z);

// Fourier transform constant of |z|^p: (|z|^p)^(t) = c_p |t|^(-1-p), with
// c_p = 2^(p+1) sqrt(pi) Gamma((p+1)/2) / Gamma(-p/2).
// Requires p > -1 and p not an even integer.
double fourier_constant(double p);

}  // namespace levylab
