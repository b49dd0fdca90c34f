#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace levylab {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

template <std::size_t K>
struct QuadratureResult {
  std::array<double, K> value{};
  std::array<double, K> error{};
  int intervals = 0;
  long evaluations = 0;
  bool converged = false;
};

struct QuadratureTolerance {
  double absolute = 0.0;
  double relative = 1e-10;
  int max_intervals = 2000;
  // Only the first `tracked` components take part in the stopping test;
  // later ones are integrated along (e.g. inner error estimates).
  std::size_t tracked = static_cast<std::size_t>(-1);
  // Measure each component's error against the summed magnitude of all
  // tracked components instead of its own value.
  bool relative_to_sum = false;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780, 0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <std::size_t K>
struct Panel {
  double a;
  double b;
  std::array<double, K> value;
  std::array<double, K> error;
  double score;
};

template <std::size_t K, class F>
Panel<K> gk15(F& f, double a, double b, long& evaluations) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<std::array<double, K>, 15> samples;
  samples[7] = f(center);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    samples[j] = f(center - dx);
    samples[14 - j] = f(center + dx);
  }
  evaluations += 15;

  Panel<K> panel{a, b, {}, {}, 0.0};
  for (std::size_t c = 0; c < K; ++c) {
    double kronrod = kKronrodWeights[7] * samples[7][c];
    double gauss = kGaussWeights[3] * samples[7][c];
    double abs_sum = kKronrodWeights[7] * std::abs(samples[7][c]);
    for (int j = 0; j < 7; ++j) {
      const double pair = samples[j][c] + samples[14 - j][c];
      kronrod += kKronrodWeights[j] * pair;
      abs_sum += kKronrodWeights[j] * (std::abs(samples[j][c]) + std::abs(samples[14 - j][c]));
      if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
    }
    const double mean = 0.5 * kronrod;
    double asc = kKronrodWeights[7] * std::abs(samples[7][c] - mean);
    for (int j = 0; j < 7; ++j) {
      asc += kKronrodWeights[j] * (std::abs(samples[j][c] - mean) + std::abs(samples[14 - j][c] - mean));
    }
    double err = std::abs((kronrod - gauss) * half);
    asc *= std::abs(half);
    if (asc != 0.0 && err != 0.0) err = asc * std::min(1.0, std::pow(200.0 * err / asc, 1.5));
    const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
    if (roundoff > err) err = roundoff;
    if (!std::isfinite(kronrod * half)) err = std::numeric_limits<double>::infinity();
    panel.value[c] = kronrod * half;
    panel.error[c] = err;
  }
  return panel;
}

}  // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) quadrature of a vector-valued
// integrand f: double -> std::array<double, K>. The panel with the largest
// error is bisected until every tracked component meets
// error <= max(absolute, relative * |value|). Panel sums are accumulated
// left to right with compensated summation, so results are deterministic.
template <std::size_t K, class F>
QuadratureResult<K> integrate_adaptive(F&& f, double a, double b, const QuadratureTolerance& tol) {
  const std::size_t tracked = std::min(tol.tracked, K);
  QuadratureResult<K> result;
  std::vector<detail::Panel<K>> panels;
  panels.reserve(static_cast<std::size_t>(tol.max_intervals));

  auto score = [&](const detail::Panel<K>& p) {
    double s = 0.0;
    for (std::size_t c = 0; c < tracked; ++c) s += p.error[c];
    return s;
  };
  auto totals = [&] {
    std::vector<const detail::Panel<K>*> order;
    order.reserve(panels.size());
    for (const auto& p : panels) order.push_back(&p);
    std::sort(order.begin(), order.end(), [](auto* l, auto* r) { return l->a < r->a; });
    std::array<CompensatedSum, K> v;
    std::array<CompensatedSum, K> e;
    for (const auto* p : order) {
      for (std::size_t c = 0; c < K; ++c) {
        v[c].add(p->value[c]);
        e[c].add(p->error[c]);
      }
    }
    for (std::size_t c = 0; c < K; ++c) {
      result.value[c] = v[c].value();
      result.error[c] = e[c].value();
    }
  };
  auto done = [&] {
    double magnitude = 0.0;
    for (std::size_t c = 0; c < tracked; ++c) magnitude += std::abs(result.value[c]);
    for (std::size_t c = 0; c < tracked; ++c) {
      const double scale = tol.relative_to_sum ? magnitude : std::abs(result.value[c]);
      if (!(result.error[c] <= std::max(tol.absolute, tol.relative * scale))) return false;
    }
    return true;
  };

  panels.push_back(detail::gk15<K>(f, a, b, result.evaluations));
  panels.back().score = score(panels.back());
  totals();
  while (!done()) {
    if (static_cast<int>(panels.size()) >= tol.max_intervals) break;
    auto worst = std::max_element(panels.begin(), panels.end(),
                                  [](const auto& l, const auto& r) { return l.score < r.score; });
    const double lo = worst->a;
    const double hi = worst->b;
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    *worst = detail::gk15<K>(f, lo, mid, result.evaluations);
    worst->score = score(*worst);
    panels.push_back(detail::gk15<K>(f, mid, hi, result.evaluations));
    panels.back().score = score(panels.back());
    totals();
  }
  result.intervals = static_cast<int>(panels.size());
  result.converged = done();
  return result;
}

// Scalar convenience wrapper.
template <class F>
QuadratureResult<1> integrate_adaptive(F&& f, double a, double b, double abs_tol, double rel_tol,
                                       int max_intervals = 2000) {
  auto wrapped = [&f](double x) { return std::array<double, 1>{f(x)}; };
  return integrate_adaptive<1>(wrapped, a, b, QuadratureTolerance{abs_tol, rel_tol, max_intervals});
}

}  // namespace levylab
