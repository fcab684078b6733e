#pragma once

// Globally adaptive 7/15-point Gauss-Kronrod quadrature with an absolute
// error target, following QUADPACK's QAG/QK15 scheme.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace specgap::detail {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  bool converged = false;
};

struct Segment {
  double a, b, value, error;
  friend bool operator<(const Segment& x, const Segment& y) { return x.error < y.error; }
};

template <class F>
Segment kronrod15(F& f, double a, double b) {
  static constexpr std::array<double, 8> xgk = {
      0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
      0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
      0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.0};
  static constexpr std::array<double, 8> wgk = {
      0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
      0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
      0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
      0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
  static constexpr std::array<double, 4> wg = {
      0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
      0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
  constexpr double eps = std::numeric_limits<double>::epsilon();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double res_g = fc * wg[3];
  double res_k = fc * wgk[7];
  double res_abs = std::abs(res_k);
  std::array<double, 7> fv1{}, fv2{};
  for (int j = 0; j < 7; ++j) {
    const double x = half * xgk[static_cast<std::size_t>(j)];
    fv1[static_cast<std::size_t>(j)] = f(center - x);
    fv2[static_cast<std::size_t>(j)] = f(center + x);
    const double sum = fv1[static_cast<std::size_t>(j)] + fv2[static_cast<std::size_t>(j)];
    res_k += wgk[static_cast<std::size_t>(j)] * sum;
    res_abs += wgk[static_cast<std::size_t>(j)] *
               (std::abs(fv1[static_cast<std::size_t>(j)]) + std::abs(fv2[static_cast<std::size_t>(j)]));
    if (j % 2 == 1) res_g += wg[static_cast<std::size_t>(j / 2)] * sum;
  }
  const double mean = 0.5 * res_k;
  double res_asc = wgk[7] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 7; ++j) {
    res_asc += wgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
  }
  const double scale = std::abs(half);
  res_abs *= scale;
  res_asc *= scale;
  double err = std::abs((res_k - res_g) * half);
  if (res_asc != 0.0 && err != 0.0) err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
  if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * res_abs, err);
  return Segment{a, b, res_k * half, err};
}

/// Bisects the segment with the largest error estimate until the summed
/// estimate is below abs_tol or max_intervals segments are in use.
template <class F>
QuadratureResult integrate_adaptive(F f, double a, double b, double abs_tol, int max_intervals) {
  QuadratureResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Segment> heap;
  const Segment first = kronrod15(f, a, b);
  heap.push(first);
  double total_error = first.error;
  int intervals = 1;
  while (total_error > abs_tol && intervals < max_intervals) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push(worst);
      break;
    }
    const Segment left = kronrod15(f, worst.a, mid);
    const Segment right = kronrod15(f, mid, worst.b);
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
  }
  // Re-sum from scratch so that error bookkeeping drift does not leak into the result.
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  double value = 0.0;
  double error = 0.0;
  for (const Segment& s : segments) {
    value += s.value;
    error += s.error;
  }
  out.value = value;
  out.error = error;
  out.intervals = intervals;
  out.converged = error <= abs_tol;
  return out;
}

} // namespace specgap::detail
