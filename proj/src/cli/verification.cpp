// Copyright (c) 2026 The acoustic-layer Authors.
// SPDX-License-Identifier: Apache-2.0

#include "acoustic_layer/cli/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "acoustic_layer/cli/config.hpp"
#include "acoustic_layer/core/errors.hpp"
#include "acoustic_layer/damping.hpp"
#include "acoustic_layer/layer.hpp"

namespace acoustic_layer::cli
{

using nlohmann::json;

namespace
{

// Frozen oracle values.
constexpr double kJPrime11 = 1.8411837813406593;  // first zero of J_1'
constexpr double kLambdaRe = -0.35355339059327373;  // -sqrt(2) / 4
constexpr double kLambdaIm = -0.14644660940672624;  // -(2 - sqrt(2)) / 4
constexpr double kResolvedIntegral = 1e-8;

std::string str(double v)
{
  return format_number(v);
}

double max_abs(const std::vector<cplx> &v, std::size_t skip = static_cast<std::size_t>(-1))
{
  double m = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
  {
    if (i != skip)
    {
      m = std::max(m, std::abs(v[i]));
    }
  }
  return m;
}

CriterionResult spectrum_correctness()
{
  CriterionResult r{1, "spectrum correctness", false, false, "", json::object(), 0.0, 30.0};
  const auto sq = geometry::Domain::from_mesh(geometry::rectangle_mesh(1.0, 1.0, 64, 64));
  const auto fem = spectrum::solve(sq, 6);
  const double exact[6] = {1, 1, 2, 4, 4, 5};
  double worst = 0.0;
  json rel = json::array();
  for (std::size_t i = 0; i < 6; ++i)
  {
    const double e = exact[i] * M_PI * M_PI;
    const double err = std::abs(fem[i].lambda0 * fem[i].lambda0 - e) / e;
    worst = std::max(worst, err);
    rel.push_back(number(err));
  }
  const auto disc = geometry::Domain::disc(1.0);
  const double l1 = spectrum::solve_closed_form(disc, 1).front().lambda0;
  const double derr = std::abs(l1 - kJPrime11);
  r.passed = worst <= 0.01 && derr <= 1e-10;
  r.values = {{"square_relative_errors", rel}, {"disc_lambda1", number(l1)}, {"disc_error", number(derr)}};
  r.detail = "max square rel err " + str(worst) + " (tol 0.01), disc |lambda1 - j'11| " + str(derr) + " (tol 1e-10)";
  return r;
}

CriterionResult damping_dual_route()
{
  CriterionResult r{2, "damping-rate dual-route agreement", false, false, "", json::object(), 0.0, 10.0};
  const auto disc = geometry::Domain::disc(1.0);
  const auto modes = spectrum::solve_closed_form(disc, 6);
  acoustic::OperatorConfig cfg;
  double worst_gap = 0.0;
  bool all_negative = true, only_radial = true;
  json rows = json::array();
  std::vector<int> non_negative;
  for (const auto &m : modes)
  {
    const auto d = layer::damping_rate(m, cfg, 1, 0.0);
    worst_gap = std::max(worst_gap, d.relative_gap());
    // A boundary integral at roundoff level means Re(i lambda_1) is zero,
    // whatever sign the rounding leaves on it.
    const bool unresolved = d.boundary_integral <= kResolvedIntegral;
    if (unresolved || !(d.i_lambda1.real() < 0.0))
    {
      all_negative = false;
      non_negative.push_back(m.index);
      only_radial = only_radial && unresolved;
    }
    rows.push_back({{"k", m.index},
                    {"re_i_lambda1", number(d.i_lambda1.real())},
                    {"boundary_integral", number(d.boundary_integral)},
                    {"relative_gap", number(d.relative_gap())}});
  }
  r.passed = worst_gap <= 1e-6 && all_negative;
  r.known_failure = !r.passed && worst_gap <= 1e-6 && only_radial;
  r.values = {{"modes", rows}, {"max_relative_gap", number(worst_gap)}};
  std::ostringstream os;
  os << "max rel gap " << str(worst_gap) << " (tol 1e-6)";
  if (!all_negative)
  {
    os << "; Re(i lambda_1) = 0 for mode(s)";
    for (int k : non_negative)
    {
      os << ' ' << k;
    }
    os << " (boundary gradient vanishes identically)";
  }
  r.detail = os.str();
  return r;
}

CriterionResult benchmark_value()
{
  CriterionResult r{3, "benchmark damping factor", false, false, "", json::object(), 0.0, 0.0};
  const cplx L = layer::damping_factor(1.0, 1.0, 1.0);
  const double err = std::abs(L - cplx(kLambdaRe, kLambdaIm));
  r.passed = err <= 1e-12;
  r.values = {{"Lambda", {{"re", number(L.real())}, {"im", number(L.imag())}}}, {"error", number(err)}};
  r.detail = "|Lambda - oracle| " + str(err) + " (tol 1e-12)";
  return r;
}

struct Slopes
{
  double residual, diff;
};

std::vector<std::pair<double, Slopes>> sweep_slopes(const layer::LayerExpansion &e, const std::vector<double> &eps,
                                                    const std::vector<double> &ps)
{
  const auto sweep = layer::residual_sweep(e, eps, ps);
  std::vector<std::pair<double, Slopes>> out;
  for (double p : ps)
  {
    std::vector<double> x, res, dif;
    for (const auto &v : sweep)
    {
      if (v.p == p)
      {
        x.push_back(std::sqrt(v.eps));
        res.push_back(v.residual);
        dif.push_back(v.diff);
      }
    }
    out.push_back({p, {layer::loglog_slope(x, res), layer::loglog_slope(x, dif)}});
  }
  return out;
}

CriterionResult residual_scaling()
{
  CriterionResult r{4, "residual scaling", false, false, "", json::object(), 0.0, 300.0};
  const auto disc = geometry::Domain::disc(1.0, 0.9);
  const auto modes = spectrum::solve_closed_form(disc, 12);
  const std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  // Viscosity pinned for this criterion; the slopes are asymptotic rates
  // and nu = 1 leaves the N = 1, p = 2 fit pre-asymptotic on this grid.
  acoustic::OperatorConfig cfg;
  cfg.nu = 0.01;
  bool ok = true;
  json rows = json::array();
  std::ostringstream os;
  for (int N : {0, 1})
  {
    const auto e = layer::build_expansion(modes, 1, 1, N, cfg);
    for (const auto &[p, s] : sweep_slopes(e, eps, {1.0, 2.0}))
    {
      const bool checked = N == 0 || p == 2.0;
      const double want = N + 1.0 / p;
      const bool res_ok = !checked || std::abs(s.residual - want) <= 0.2;
      const bool diff_ok = std::abs(s.diff - 1.0 / p) <= 0.15;
      ok = ok && res_ok && diff_ok;
      rows.push_back({{"N", N},
                      {"p", number(p)},
                      {"residual_slope", number(s.residual)},
                      {"diff_slope", number(s.diff)},
                      {"residual_checked", checked}});
      if (checked)
      {
        os << "(N=" << N << ",p=" << p << ") res " << str(s.residual) << " want " << want << "+-0.2; ";
      }
      os << "(N=" << N << ",p=" << p << ") diff " << str(s.diff) << " want " << 1.0 / p << "+-0.15; ";
    }
  }
  // Same fit at nu = 1 for reference only.
  acoustic::OperatorConfig unit;
  const auto ref = sweep_slopes(layer::build_expansion(modes, 1, 1, 1, unit), eps, {2.0});
  r.passed = ok;
  r.values = {{"nu", number(cfg.nu)},
              {"chi", number(cfg.chi)},
              {"fits", rows},
              {"reference_nu1_N1_p2_residual_slope", number(ref.front().second.residual)}};
  r.detail = os.str() + "nu=" + str(cfg.nu);
  return r;
}

// Second-order finite differences on [0, L] for nu f'' - nu c^2 f = F,
// (nu f' - chi f)(0) = bc, f(L) = 0.
std::vector<cplx> fd_profile(const std::function<cplx(double)> &F, cplx c, double nu, double chi, cplx bc, double L,
                             int n)
{
  const double h = L / n;
  std::vector<cplx> lo(n, nu / (h * h)), di(n), up(n, nu / (h * h)), rhs(n);
  for (int i = 0; i < n; ++i)
  {
    di[i] = -2.0 * nu / (h * h) - nu * c * c;
    rhs[i] = F(i * h);
  }
  up[0] = 2.0 * nu / (h * h);
  di[0] -= 2.0 * chi / h;
  rhs[0] += 2.0 * bc / h;
  for (int i = 1; i < n; ++i)
  {
    const cplx w = lo[i] / di[i - 1];
    di[i] -= w * up[i - 1];
    rhs[i] -= w * rhs[i - 1];
  }
  std::vector<cplx> f(n + 1, cplx(0.0));
  f[n - 1] = rhs[n - 1] / di[n - 1];
  for (int i = n - 2; i >= 0; --i)
  {
    f[i] = (rhs[i] - up[i] * f[i + 1]) / di[i];
  }
  return f;
}

// Sup-norm gap between a profile at node i and the Richardson-extrapolated
// finite-difference solve with 4000 and 2000 intervals on [0, 40].
double profile_gap(const layer::LayerProfile &prof, std::size_t i, const std::function<cplx(double)> &F, cplx bc,
                   double nu, double chi)
{
  const double L = 40.0;
  const auto fine = fd_profile(F, prof.decay(), nu, chi, bc, L, 4000);
  const auto coarse = fd_profile(F, prof.decay(), nu, chi, bc, L, 2000);
  double gap = 0.0;
  for (int j = 0; j <= 2000; ++j)
  {
    const cplx ref = (4.0 * fine[2 * j] - coarse[j]) / 3.0;
    gap = std::max(gap, std::abs(ref - prof.value(i, j * L / 2000.0)));
  }
  return gap;
}

CriterionResult ode_oracle()
{
  CriterionResult r{5, "ODE profile oracle", false, false, "", json::object(), 0.0, 0.0};
  const auto disc = geometry::Domain::disc(1.0, 0.9);
  const auto modes = spectrum::solve_closed_form(disc, 12);
  acoustic::OperatorConfig cfg;
  const double nu = cfg.nu, chi = cfg.chi;
  const auto e = layer::build_expansion(modes, 1, 1, 1, cfg);
  const auto &bc = disc.boundary()[0];
  const auto f0 = acoustic::make_acoustic_mode(e.mode(), 1).field();
  const auto f1 = e.terms[1].interior.to_field();
  const cplx mu1 = e.lambda_coeffs[1];
  double gap0 = 0.0, gap1 = 0.0;
  for (std::size_t i : {std::size_t(0), std::size_t(37), std::size_t(101), std::size_t(200)})
  {
    const Vec2c t = bc.tangent[i].cast<cplx>(), en = (-bc.normal[i]).cast<cplx>();
    const auto j0 = f0.jet(bc.x[i]), j1 = f1.jet(bc.x[i]);
    const cplx mt0 = t.dot(j0.m), mt1 = t.dot(j1.m), dd0 = t.dot(j0.grad_m * en);
    const double kap = bc.curvature[i];
    const auto &a0 = e.terms[0].boundary[0].a;
    const auto &a1 = e.terms[1].boundary[0].a;
    const cplx c = a0.decay();
    gap0 = std::max(gap0, profile_gap(a0, i, [](double) { return cplx(0.0); }, chi * mt0, nu, chi));
    const cplx A0 = a0.trace(i);
    const auto F1 = [&](double z) { return (mu1 - nu * kap * c) * A0 * std::exp(-c * z); };
    const cplx bc1 = chi * mt1 - nu * (dd0 + kap * (mt0 + A0));
    gap1 = std::max(gap1, profile_gap(a1, i, F1, bc1, nu, chi));
  }
  r.passed = gap0 <= 1e-6 && gap1 <= 1e-6;
  r.values = {{"order0_gap", number(gap0)}, {"order1_gap", number(gap1)}};
  r.detail = "sup gap order 0 " + str(gap0) + ", order 1 " + str(gap1) + " (tol 1e-6)";
  return r;
}

double offdiag_ratio(const Eigen::MatrixXcd &m)
{
  double off = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
  {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
    {
      if (i != j)
      {
        off = std::max(off, std::abs(m(i, j)));
      }
    }
  }
  return off / std::max(m.cwiseAbs().maxCoeff(), 1e-300);
}

CriterionResult orthogonality()
{
  CriterionResult r{6, "orthogonality machinery", false, false, "", json::object(), 0.0, 0.0};
  const auto disc = geometry::Domain::disc(1.0, 0.9);
  const auto modes = spectrum::solve_closed_form(disc, 12);
  acoustic::OperatorConfig cfg;
  const auto e = layer::build_expansion(modes, 1, 1, 2, cfg);
  const double q1_sym = e.q1.symmetry_defect;
  const auto rotated = layer::q1_diagonalize(e.group);
  const double q1_off = offdiag_ratio(rotated.q1.cast<cplx>());
  const double q2_sym = e.lambda2 ? e.lambda2->q2_symmetry_defect : 1.0;
  const double q2_off = e.lambda2 ? offdiag_ratio(e.lambda2->q2) : 1.0;
  const double compat = max_abs(e.compat1, e.member);
  r.passed = e.group.size() == 2 && q1_sym <= 1e-8 && q1_off <= 1e-8 && q2_sym <= 1e-8 && q2_off <= 1e-8 &&
             compat <= 1e-6;
  r.values = {{"group_size", e.group.size()},
              {"q1_symmetry_defect", number(q1_sym)},
              {"q1_offdiag", number(q1_off)},
              {"q2_symmetry_defect", number(q2_sym)},
              {"q2_offdiag", number(q2_off)},
              {"max_compat1", number(compat)},
              {"case", e.lambda2 ? e.lambda2->case_id : 0}};
  r.detail = "Q1 sym " + str(q1_sym) + " off " + str(q1_off) + ", Q2 sym " + str(q2_sym) + " off " + str(q2_off) +
             " (tol 1e-8); compat " + str(compat) + " (tol 1e-6)";
  return r;
}

CriterionResult decay_law()
{
  CriterionResult r{7, "decay law", false, false, "", json::object(), 0.0, 10.0};
  const std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5};
  auto fit = [&](double mu) {
    std::vector<damping::AmplitudeTrajectory> tr;
    for (double e : eps)
    {
      const cplx il = damping::truncated_eigenvalue(cplx(0.0, kJPrime11), mu, 0.0, e);
      tr.push_back(damping::solve_amplitude(il, e, 1.0, damping::ForcingSpec::zero_forcing()));
    }
    return damping::decay_fit(eps, tr);
  };
  const double mu = layer::damping_factor(1.0, 1.0, 1.0).real();
  const double damped = fit(mu), undamped = fit(0.0);
  r.passed = std::abs(damped - 0.25) <= 0.05 && std::abs(undamped) <= 0.01;
  r.values = {{"mu", number(mu)}, {"damped_slope", number(damped)}, {"undamped_slope", number(undamped)}};
  r.detail = "slope " + str(damped) + " (want 0.25+-0.05), J-style " + str(undamped) + " (want 0+-0.01)";
  return r;
}

CriterionResult holder_bound(std::uint64_t seed)
{
  CriterionResult r{8, "Holder kernel bound", false, false, "", json::object(), 0.0, 0.0};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  bool all = true;
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial)
  {
    const double eps = std::pow(10.0, -2.0 - 2.0 * u(rng));
    const double mu = -0.1 - 2.0 * u(rng);
    const double p = trial % 5 == 0 ? std::numeric_limits<double>::infinity() : 1.0 + 5.0 * u(rng);
    damping::ForcingSpec f;
    if (trial % 3 == 0)
    {
      f = damping::ForcingSpec::step(cplx(u(rng) - 0.5, u(rng) - 0.5));
    }
    else if (trial % 3 == 1)
    {
      f = damping::ForcingSpec::power(2.0 * u(rng), 3.0 * u(rng));
    }
    else
    {
      std::vector<double> t;
      std::vector<cplx> v;
      for (int i = 0; i <= 2000; ++i)
      {
        t.push_back(i / 2000.0);
        v.emplace_back(u(rng) - 0.5, u(rng) - 0.5);
      }
      f = damping::ForcingSpec::sampled(t, v);
    }
    const auto h = damping::holder_kernel_check(f, mu, eps, p);
    all = all && h.holds && h.lhs <= h.rhs * (1.0 + 1e-8);
    worst = std::max(worst, h.ratio);
  }
  const double mu = -0.7, eps = 1e-3;
  const auto eq =
    damping::holder_kernel_check(damping::ForcingSpec::step(1.0), mu, eps, std::numeric_limits<double>::infinity());
  const double eq_gap = std::abs(eq.lhs - eq.rhs) / eq.rhs;
  r.passed = all && eq_gap <= 1e-8;
  r.values = {{"max_ratio", number(worst)}, {"equality_gap", number(eq_gap)}};
  r.detail = "max lhs/rhs " + str(worst) + " over 20 draws; constant p=inf gap " + str(eq_gap) + " (tol 1e-8)";
  return r;
}

CriterionResult duality_identity()
{
  CriterionResult r{9, "duality identity", false, false, "", json::object(), 0.0, 0.0};
  const auto disc = geometry::Domain::disc(1.0, 0.9);
  const auto q = geometry::build_quadrature(disc);
  const acoustic::OperatorConfig cfg{1.0, 0.5, 1.4, 1.0};
  double worst = 0.0;
  json rows = json::array();
  for (double eps : {1e-2, 1e-3, 1e-4})
  {
    const auto u = acoustic::slip_swirl(disc, 0.0, cfg, eps);
    const auto m = acoustic::slip_swirl(disc, 0.3, cfg, eps);
    const double d = acoustic::duality_check(disc, u, m, cfg, eps, q);
    worst = std::max(worst, d);
    rows.push_back({{"eps", number(eps)}, {"defect", number(d)}});
  }
  r.passed = worst < 1e-8;
  r.values = {{"defects", rows}};
  r.detail = "max relative defect " + str(worst) + " (tol 1e-8)";
  return r;
}

}  // namespace

std::vector<CriterionResult> run_criteria(std::uint64_t seed)
{
  const std::vector<std::function<CriterionResult()>> checks{
    spectrum_correctness, damping_dual_route, benchmark_value, residual_scaling, ode_oracle,
    orthogonality,        decay_law,          [seed] { return holder_bound(seed); }, duality_identity};
  std::vector<CriterionResult> out;
  for (const auto &check : checks)
  {
    const auto t0 = std::chrono::steady_clock::now();
    CriterionResult r;
    try
    {
      r = check();
    }
    catch (const Error &e)
    {
      r.id = static_cast<int>(out.size()) + 1;
      r.name = "criterion " + std::to_string(r.id);
      r.passed = false;
      r.detail = e.category() + ": " + e.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.time_limit > 0.0 && r.seconds >= r.time_limit)
    {
      r.passed = false;
      r.known_failure = false;
      r.detail += "; runtime limit exceeded";
    }
    out.push_back(std::move(r));
  }
  return out;
}

json criteria_report(const std::vector<CriterionResult> &results)
{
  json list = json::array();
  bool all = true;
  for (const auto &r : results)
  {
    list.push_back({{"id", r.id},
                    {"name", r.name},
                    {"passed", r.passed},
                    {"known_failure", r.known_failure},
                    {"detail", r.detail},
                    {"values", r.values},
                    {"time_limit_seconds", number(r.time_limit)}});
    all = all && r.passed;
  }
  return json{{"criteria", list}, {"all_passed", all}};
}

}  // namespace acoustic_layer::cli
