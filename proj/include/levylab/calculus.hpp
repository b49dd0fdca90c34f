#pragma once

#include "levylab/norm.hpp"

namespace levylab {

// First and second partial derivatives of the norm with respect to x_1.
struct DerivativePair {
  double d1 = 0.0;
  double d2 = 0.0;
};

// Implicit differentiation of sum_k M(|x_k| / ||x||) = 1. Evaluated at
// (|x_1|, ..., |x_n|) with the sign of x_1 reattached to d1. Requires
// (x_2, ..., x_n) != 0.
double orlicz_d1(const OrliczFunction& fn, const VectorN& x);
double orlicz_d2(const OrliczFunction& fn, const VectorN& x);
DerivativePair orlicz_derivatives(const OrliczFunction& fn, const VectorN& x);

// Same formulas with ||x|| supplied by the caller (used when a closed form is cheaper).
DerivativePair orlicz_derivatives(const OrliczFunction& fn, const VectorN& x, double norm);

// Dispatches l_q, Euclidean and Orlicz norms to the analytic formulas.
// Throws std::domain_error for the max norm.
DerivativePair norm_derivatives(const NormSpec& spec, const VectorN& x);

struct NormJet {
  double norm = 0.0;
  DerivativePair derivatives;
};

// ||x|| together with its x_1 derivatives, sharing one norm evaluation.
NormJet norm_jet(const NormSpec& spec, const VectorN& x);

// Central differences in the e_1 direction.
double default_fd_step(const NormSpec& spec, const VectorN& x);
double fd_d1(const NormSpec& spec, const VectorN& x, double h);
double fd_d2(const NormSpec& spec, const VectorN& x, double h);
inline double fd_d1(const NormSpec& spec, const VectorN& x) { return fd_d1(spec, x, default_fd_step(spec, x)); }
inline double fd_d2(const NormSpec& spec, const VectorN& x) { return fd_d2(spec, x, default_fd_step(spec, x)); }

}  // namespace levylab
