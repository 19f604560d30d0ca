// Copyright 2026 The tsapprox Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Damped Gauss-Newton (Levenberg-Marquardt) for
//   g(x) = amp * exp(-(x - centre)^2 / (2 width^2)) + offset
// Work happens in local coordinates x = i - a; the centre is translated
// back to absolute positions on return.

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

#include "tsapprox/families.hpp"

namespace tsapprox {
namespace {

using Params = std::array<double, 4>;

constexpr int kMaxIterations = 200;
constexpr double kRelTol = 1e-10;
constexpr double kMinWidth = 1e-3;

double sse(const Params& p, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t x = 0; x < y.size(); ++x) {
    const double r = y[x] - gaussian_value(p, static_cast<double>(x));
    s += r * r;
  }
  return s;
}

// Least-squares amplitude and offset for a fixed centre and width.
Params linear_start(double centre, double width, std::span<const double> y) {
  const double n = static_cast<double>(y.size());
  double se = 0, see = 0, sy = 0, sey = 0;
  for (std::size_t x = 0; x < y.size(); ++x) {
    const double z = (static_cast<double>(x) - centre) / width;
    const double e = std::exp(-0.5 * z * z);
    se += e;
    see += e * e;
    sy += y[x];
    sey += e * y[x];
  }
  const double det = n * see - se * se;
  if (std::abs(det) < 1e-12 * std::max(1.0, n * see)) return {0.0, centre, width, sy / n};
  const double amp = (n * sey - se * sy) / det;
  const double offset = (sy - amp * se) / n;
  return {amp, centre, width, offset};
}

Params levenberg_marquardt(Params p, std::span<const double> y, double* out_sse) {
  double cur = sse(p, y);
  double lambda = 1e-3;
  Eigen::Matrix4d jtj;
  Eigen::Vector4d jtr;
  for (int it = 0; it < kMaxIterations; ++it) {
    jtj.setZero();
    jtr.setZero();
    for (std::size_t x = 0; x < y.size(); ++x) {
      const double d = static_cast<double>(x) - p[1];
      const double w2 = p[2] * p[2];
      const double e = std::exp(-0.5 * d * d / w2);
      Eigen::Vector4d j(e, p[0] * e * d / w2, p[0] * e * d * d / (w2 * p[2]), 1.0);
      const double r = y[x] - (p[0] * e + p[3]);
      jtj.noalias() += j * j.transpose();
      jtr.noalias() += j * r;
    }
    bool accepted = false;
    while (lambda < 1e12) {
      Eigen::Matrix4d a = jtj;
      for (int k = 0; k < 4; ++k) a(k, k) += lambda * std::max(jtj(k, k), 1e-12);
      const Eigen::Vector4d step = a.ldlt().solve(jtr);
      Params trial{p[0] + step[0], p[1] + step[1], p[2] + step[2], p[3] + step[3]};
      if (std::abs(trial[2]) < kMinWidth) trial[2] = std::copysign(kMinWidth, trial[2] == 0 ? 1.0 : trial[2]);
      const double next = sse(trial, y);
      if (std::isfinite(next) && next <= cur) {
        const double rel = (cur - next) / std::max(cur, 1e-300);
        p = trial;
        cur = next;
        lambda = std::max(lambda / 3.0, 1e-12);
        accepted = true;
        if (rel < kRelTol) {
          *out_sse = cur;
          return p;
        }
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
  }
  *out_sse = cur;
  return p;
}

}  // namespace

FittedFunction fit_gaussian(const FamilyDescriptor& family, const TimeSeries& seg,
                            const FittedFunction* hint) {
  const auto y = seg.values();
  const double n = static_cast<double>(y.size());
  const double a = static_cast<double>(seg.domain().a());
  const double mean = std::accumulate(y.begin(), y.end(), 0.0) / n;
  const double centre = (n - 1.0) / 2.0;
  const double width = std::max(1.0, n / 4.0);

  Params best{0.0, centre, width, mean};
  double best_sse = sse(best, y);

  if (y.size() > 1) {
    std::vector<Params> starts;
    if (hint != nullptr && hint->family() == family) {
      const auto h = hint->coeffs();
      starts.push_back({h[0], h[1] - a, h[2], h[3]});
    }
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    starts.push_back(linear_start(static_cast<double>(hi - y.begin()), width, y));
    starts.push_back(linear_start(static_cast<double>(lo - y.begin()), width, y));
    if (hint == nullptr) starts.push_back(linear_start(centre, width, y));

    for (const auto& s : starts) {
      double s_sse = 0.0;
      const Params p = levenberg_marquardt(s, y, &s_sse);
      if (std::isfinite(s_sse) && s_sse < best_sse &&
          std::all_of(p.begin(), p.end(), [](double v) { return std::isfinite(v); })) {
        best = p;
        best_sse = s_sse;
      }
    }
  }
  if (!std::isfinite(best_sse)) {
    throw FitError("gaussian fit diverged on " + seg.domain().str() +
                   " (sse=" + std::to_string(best_sse) + ")");
  }
  return FittedFunction(family, seg.domain(), {best[0], best[1] + a, best[2], best[3]});
}

}  // namespace tsapprox
