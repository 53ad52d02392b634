// Copyright 2026 The Chronos Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "chronos/collapse_distribution.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <utility>

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "chronos/csv.hpp"
#include "chronos/errors.hpp"
#include "overloaded.hpp"

namespace chronos {

namespace {

using detail::overloaded;

constexpr double kSqrt2 = std::numbers::sqrt2;

double std_normal_pdf(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi); }

// Phi(hi) - Phi(lo) without cancellation in either tail.
double normal_mass(double lo, double hi) {
  if (lo >= 0.0) {
    return 0.5 * (boost::math::erfc(lo / kSqrt2) - boost::math::erfc(hi / kSqrt2));
  }
  if (hi <= 0.0) {
    return 0.5 * (boost::math::erfc(-hi / kSqrt2) - boost::math::erfc(-lo / kSqrt2));
  }
  return 1.0 - 0.5 * boost::math::erfc(-lo / kSqrt2) - 0.5 * boost::math::erfc(hi / kSqrt2);
}

double std_normal_cdf(double z) { return 0.5 * boost::math::erfc(-z / kSqrt2); }

double std_normal_quantile(double p) {
  if (p <= 0.0) return -std::numeric_limits<double>::infinity();
  if (p >= 1.0) return std::numeric_limits<double>::infinity();
  return -kSqrt2 * boost::math::erfc_inv(2.0 * p);
}

void require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

bool finite(double v) { return std::isfinite(v); }

// Integral of a linear segment (f0 at s=0, slope c1) times (t0 + s)^m over [0, h].
double segment_moment(double t0, double h, double f0, double c1, int m) {
  const double h2 = h * h, h3 = h2 * h, h4 = h3 * h;
  const double i0 = f0 * h + c1 * h2 / 2.0;           // int f
  const double i1 = f0 * h2 / 2.0 + c1 * h3 / 3.0;    // int s f
  const double i2 = f0 * h3 / 3.0 + c1 * h4 / 4.0;    // int s^2 f
  switch (m) {
    case 0:
      return i0;
    case 1:
      return t0 * i0 + i1;
    default:
      return t0 * t0 * i0 + 2.0 * t0 * i1 + i2;
  }
}

}  // namespace

CollapseDistribution::CollapseDistribution(CollapseVariant variant, double t_max)
    : variant_(std::move(variant)), t_max_(t_max) {
  require(finite(t_max) && t_max > 0.0, "collapse support end t_max must be finite and positive");
  const double T = t_max;
  std::visit(
      overloaded{
          [&](const collapse::Delta& d) {
            require(finite(d.at) && d.at >= 0.0 && d.at <= T, "delta location must lie in [0, t_max]");
            mass_ = 1.0;
          },
          [&](const collapse::Uniform& u) {
            require(finite(u.a) && finite(u.b) && u.a >= 0.0 && u.b > u.a,
                    "uniform bounds need 0 <= a < b");
            require(u.a < T, "uniform support starts after t_max");
            mass_ = (std::min(u.b, T) - u.a) / (u.b - u.a);
          },
          [&](const collapse::Exponential& e) {
            require(finite(e.rate) && e.rate > 0.0, "exponential rate must be positive");
            require(finite(e.offset) && e.offset >= 0.0 && e.offset < T,
                    "exponential offset must lie in [0, t_max)");
            mass_ = -std::expm1(-e.rate * (T - e.offset));
          },
          [&](const collapse::Gamma& g) {
            require(finite(g.shape) && g.shape >= 1.0, "gamma shape must be >= 1");
            require(finite(g.scale) && g.scale > 0.0, "gamma scale must be positive");
            require(finite(g.offset) && g.offset >= 0.0 && g.offset < T,
                    "gamma offset must lie in [0, t_max)");
            mass_ = boost::math::gamma_p(g.shape, (T - g.offset) / g.scale);
          },
          [&](const collapse::TruncatedGaussian& g) {
            require(finite(g.mean) && finite(g.sigma) && g.sigma > 0.0,
                    "truncated gaussian needs finite mean and positive sigma");
            mass_ = normal_mass((0.0 - g.mean) / g.sigma, (T - g.mean) / g.sigma);
          },
          [&](const collapse::Tabulated& tab) {
            require(tab.t.size() == tab.density.size(), "tabulated t and density lengths differ");
            require(tab.t.size() >= 2, "tabulated density needs at least two nodes");
            for (std::size_t i = 0; i < tab.t.size(); ++i) {
              require(finite(tab.t[i]) && finite(tab.density[i]), "tabulated values must be finite");
              require(tab.density[i] >= 0.0, "tabulated density must be nonnegative");
              if (i > 0) require(tab.t[i] > tab.t[i - 1], "tabulated times must increase strictly");
            }
            require(tab.t.front() >= 0.0 && tab.t.back() <= T, "tabulated times must lie in [0, t_max]");
            cumulative_.assign(tab.t.size(), 0.0);
            for (std::size_t i = 1; i < tab.t.size(); ++i) {
              cumulative_[i] = cumulative_[i - 1] +
                               0.5 * (tab.density[i] + tab.density[i - 1]) * (tab.t[i] - tab.t[i - 1]);
            }
            mass_ = cumulative_.back();
          },
      },
      variant_);
  require(mass_ > 1e-300 && finite(mass_), "collapse distribution has no mass on [0, t_max]");
}

CollapseDistribution CollapseDistribution::delta(double at, double t_max) {
  return {collapse::Delta{at}, t_max};
}
CollapseDistribution CollapseDistribution::uniform(double a, double b, double t_max) {
  return {collapse::Uniform{a, b}, t_max};
}
CollapseDistribution CollapseDistribution::exponential(double rate, double t_max, double offset) {
  return {collapse::Exponential{rate, offset}, t_max};
}
CollapseDistribution CollapseDistribution::gamma(double shape, double scale, double t_max,
                                                 double offset) {
  return {collapse::Gamma{shape, scale, offset}, t_max};
}
CollapseDistribution CollapseDistribution::truncated_gaussian(double mean, double sigma, double t_max) {
  return {collapse::TruncatedGaussian{mean, sigma}, t_max};
}
CollapseDistribution CollapseDistribution::tabulated(std::vector<double> t, std::vector<double> density,
                                                     double t_max) {
  return {collapse::Tabulated{std::move(t), std::move(density)}, t_max};
}

bool CollapseDistribution::is_delta() const noexcept {
  return std::holds_alternative<collapse::Delta>(variant_);
}

std::optional<double> CollapseDistribution::delta_time() const noexcept {
  if (const auto* d = std::get_if<collapse::Delta>(&variant_)) return d->at;
  return std::nullopt;
}

std::string CollapseDistribution::family() const {
  return std::visit(overloaded{
                        [](const collapse::Delta&) { return std::string("delta"); },
                        [](const collapse::Uniform&) { return std::string("uniform"); },
                        [](const collapse::Exponential&) { return std::string("exponential"); },
                        [](const collapse::Gamma&) { return std::string("gamma"); },
                        [](const collapse::TruncatedGaussian&) { return std::string("truncated_gaussian"); },
                        [](const collapse::Tabulated&) { return std::string("tabulated"); },
                    },
                    variant_);
}

double CollapseDistribution::pdf(double t) const {
  if (!(t >= 0.0 && t <= t_max_)) {
    throw DomainError("pdf evaluated at t = " + std::to_string(t) + " outside [0, t_max]");
  }
  const double T = t_max_;
  return std::visit(
      overloaded{
          [](const collapse::Delta&) -> double {
            throw VariantError("delta distribution has no pointwise density; use the delta branch");
          },
          [&](const collapse::Uniform& u) -> double {
            const double hi = std::min(u.b, T);
            return (t >= u.a && t <= hi) ? 1.0 / (hi - u.a) : 0.0;
          },
          [&](const collapse::Exponential& e) -> double {
            if (t < e.offset) return 0.0;
            return e.rate * std::exp(-e.rate * (t - e.offset)) / mass_;
          },
          [&](const collapse::Gamma& g) -> double {
            if (t < g.offset) return 0.0;
            return boost::math::gamma_p_derivative(g.shape, (t - g.offset) / g.scale) / g.scale / mass_;
          },
          [&](const collapse::TruncatedGaussian& g) -> double {
            return std_normal_pdf((t - g.mean) / g.sigma) / (g.sigma * mass_);
          },
          [&](const collapse::Tabulated& tab) -> double {
            if (t < tab.t.front() || t > tab.t.back()) return 0.0;
            const auto it = std::upper_bound(tab.t.begin(), tab.t.end(), t);
            if (it == tab.t.end()) return tab.density.back() / mass_;
            const auto j = static_cast<std::size_t>(it - tab.t.begin()) - 1;
            const double s = (t - tab.t[j]) / (tab.t[j + 1] - tab.t[j]);
            return ((1.0 - s) * tab.density[j] + s * tab.density[j + 1]) / mass_;
          },
      },
      variant_);
}

double CollapseDistribution::cdf(double t) const {
  if (t <= 0.0) {
    if (const auto at = delta_time(); at && *at <= 0.0 && t >= 0.0) return 1.0;
    return 0.0;
  }
  if (t >= t_max_) return 1.0;
  const double T = t_max_;
  return std::visit(
      overloaded{
          [&](const collapse::Delta& d) { return t >= d.at ? 1.0 : 0.0; },
          [&](const collapse::Uniform& u) {
            const double hi = std::min(u.b, T);
            return std::clamp((t - u.a) / (hi - u.a), 0.0, 1.0);
          },
          [&](const collapse::Exponential& e) {
            if (t <= e.offset) return 0.0;
            return -std::expm1(-e.rate * (t - e.offset)) / mass_;
          },
          [&](const collapse::Gamma& g) {
            if (t <= g.offset) return 0.0;
            return boost::math::gamma_p(g.shape, (t - g.offset) / g.scale) / mass_;
          },
          [&](const collapse::TruncatedGaussian& g) {
            return normal_mass(-g.mean / g.sigma, (t - g.mean) / g.sigma) / mass_;
          },
          [&](const collapse::Tabulated& tab) {
            if (t <= tab.t.front()) return 0.0;
            if (t >= tab.t.back()) return 1.0;
            const auto it = std::upper_bound(tab.t.begin(), tab.t.end(), t);
            const auto j = static_cast<std::size_t>(it - tab.t.begin()) - 1;
            const double h = tab.t[j + 1] - tab.t[j];
            const double c1 = (tab.density[j + 1] - tab.density[j]) / h;
            const double s = t - tab.t[j];
            return (cumulative_[j] + tab.density[j] * s + 0.5 * c1 * s * s) / mass_;
          },
      },
      variant_);
}

double CollapseDistribution::quantile(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("quantile level must lie in [0, 1]");
  const double T = t_max_;
  const double t = std::visit(
      overloaded{
          [&](const collapse::Delta& d) { return d.at; },
          [&](const collapse::Uniform& u_) { return u_.a + u * (std::min(u_.b, T) - u_.a); },
          [&](const collapse::Exponential& e) {
            return e.offset - std::log1p(-u * mass_) / e.rate;
          },
          [&](const collapse::Gamma& g) {
            const double p = u * mass_;
            if (p <= 0.0) return g.offset;
            return g.offset + g.scale * boost::math::gamma_p_inv(g.shape, p);
          },
          [&](const collapse::TruncatedGaussian& g) {
            const double a = -g.mean / g.sigma;
            if (a > 0.0) {
              const double upper = 0.5 * boost::math::erfc(a / kSqrt2) - u * mass_;
              if (upper <= 0.0) return T;
              return g.mean + g.sigma * kSqrt2 * boost::math::erfc_inv(2.0 * upper);
            }
            return g.mean + g.sigma * std_normal_quantile(std_normal_cdf(a) + u * mass_);
          },
          [&](const collapse::Tabulated& tab) {
            const double target = u * mass_;
            auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
            if (it == cumulative_.end()) return tab.t.back();
            auto j = static_cast<std::size_t>(it - cumulative_.begin());
            j = j == 0 ? 0 : j - 1;
            const double h = tab.t[j + 1] - tab.t[j];
            const double f0 = tab.density[j];
            const double c1 = (tab.density[j + 1] - f0) / h;
            const double r = target - cumulative_[j];
            // Root of f0 s + c1 s^2 / 2 = r in the cancellation-free form.
            const double disc = std::max(0.0, f0 * f0 + 2.0 * c1 * r);
            const double denom = f0 + std::sqrt(disc);
            const double s = denom > 0.0 ? 2.0 * r / denom : 0.0;
            return tab.t[j] + std::clamp(s, 0.0, h);
          },
      },
      variant_);
  return std::clamp(t, 0.0, T);
}

double CollapseDistribution::moment(int order) const {
  if (order != 1 && order != 2) {
    throw DomainError("moment order must be 1 or 2, got " + std::to_string(order));
  }
  const double T = t_max_;
  return std::visit(
      overloaded{
          [&](const collapse::Delta& d) { return order == 1 ? d.at : d.at * d.at; },
          [&](const collapse::Uniform& u) {
            const double a = u.a, b = std::min(u.b, T);
            return order == 1 ? 0.5 * (a + b) : (a * a + a * b + b * b) / 3.0;
          },
          [&](const collapse::Exponential& e) {
            const double lam = e.rate, L = T - e.offset;
            const double tail = std::exp(-lam * L) / mass_;
            const double m1 = 1.0 / lam - L * tail;
            if (order == 1) return e.offset + m1;
            const double m2 = 2.0 / (lam * lam) - (L * L + 2.0 * L / lam) * tail;
            return e.offset * e.offset + 2.0 * e.offset * m1 + m2;
          },
          [&](const collapse::Gamma& g) {
            const double x = (T - g.offset) / g.scale;
            const double k = g.shape, th = g.scale;
            const double m1 = th * k * boost::math::gamma_p(k + 1.0, x) / mass_;
            if (order == 1) return g.offset + m1;
            const double m2 = th * th * k * (k + 1.0) * boost::math::gamma_p(k + 2.0, x) / mass_;
            return g.offset * g.offset + 2.0 * g.offset * m1 + m2;
          },
          [&](const collapse::TruncatedGaussian& g) {
            const double a = -g.mean / g.sigma, b = (T - g.mean) / g.sigma;
            const double pa = std_normal_pdf(a), pb = std_normal_pdf(b);
            const double shift = (pa - pb) / mass_;
            const double m1 = g.mean + g.sigma * shift;
            if (order == 1) return m1;
            const double var = g.sigma * g.sigma * (1.0 + (a * pa - b * pb) / mass_ - shift * shift);
            return var + m1 * m1;
          },
          [&](const collapse::Tabulated& tab) {
            double acc = 0.0;
            for (std::size_t j = 0; j + 1 < tab.t.size(); ++j) {
              const double h = tab.t[j + 1] - tab.t[j];
              const double c1 = (tab.density[j + 1] - tab.density[j]) / h;
              acc += segment_moment(tab.t[j], h, tab.density[j], c1, order);
            }
            return acc / mass_;
          },
      },
      variant_);
}

double CollapseDistribution::variance() const {
  if (is_delta()) return 0.0;
  const double m1 = moment(1);
  return moment(2) - m1 * m1;
}

std::vector<double> CollapseDistribution::breakpoints() const {
  const double T = t_max_;
  std::vector<double> pts{0.0, T};
  auto add = [&](double t) {
    if (t > 0.0 && t < T) pts.push_back(t);
  };
  std::visit(overloaded{
                 [&](const collapse::Delta& d) { add(d.at); },
                 [&](const collapse::Uniform& u) {
                   add(u.a);
                   add(u.b);
                 },
                 [&](const collapse::Exponential& e) { add(e.offset); },
                 [&](const collapse::Gamma& g) { add(g.offset); },
                 [&](const collapse::TruncatedGaussian&) {},
                 [&](const collapse::Tabulated& tab) {
                   for (double t : tab.t) add(t);
                 },
             },
             variant_);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

double CollapseDistribution::sample(RandomStream& rng) const { return quantile(rng.uniform()); }

std::vector<double> CollapseDistribution::sample(RandomStream& rng, std::size_t n) const {
  if (n == 0) throw DomainError("sample count must be at least 1");
  std::vector<double> out(n);
  for (auto& t : out) t = sample(rng);
  return out;
}

collapse::Tabulated CollapseDistribution::read_table_csv(const std::filesystem::path& path) {
  const auto rows = read_numeric_csv(path, {"t", "f"});
  collapse::Tabulated tab;
  tab.t.reserve(rows.size());
  tab.density.reserve(rows.size());
  for (const auto& r : rows) {
    tab.t.push_back(r[0]);
    tab.density.push_back(r[1]);
  }
  return tab;
}

void CollapseDistribution::write_table_csv(const collapse::Tabulated& table,
                                           const std::filesystem::path& path) {
  CsvWriter out(path, {"t", "f"});
  for (std::size_t i = 0; i < table.t.size(); ++i) out.row({table.t[i], table.density[i]});
}

}  // namespace chronos
