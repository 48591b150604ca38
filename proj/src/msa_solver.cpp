#include "ssanum/msa_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ssanum/objective.hpp"

namespace ssanum {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

void SolverSettings::validate() const {
  if (max_iters < 1) throw std::invalid_argument("solver: max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("solver: grad_tol must be > 0");
  if (!(obj_tol > 0.0)) throw std::invalid_argument("solver: obj_tol must be > 0");
  if (!(min_share_floor >= 0.0)) {
    throw std::invalid_argument("solver: min_share_floor must be >= 0");
  }
  if (!(initial_step > 0.0)) throw std::invalid_argument("solver: initial_step must be > 0");
  if (!(backtrack_factor > 0.0) || !(backtrack_factor < 1.0)) {
    throw std::invalid_argument("solver: backtrack_factor must be in (0, 1)");
  }
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  if (v.empty()) throw std::invalid_argument("project_to_simplex: empty vector");
  std::vector<double> u(v.begin(), v.end());
  std::sort(u.begin(), u.end(), std::greater<>());
  double run = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j) {
    run += u[j];
    const double t = (run - 1.0) / static_cast<double>(j + 1);
    if (u[j] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

namespace {

// Projects column b of y + t*g in place into out.
void project_columns(const Mat& y, const Mat& g, double t, Mat& out,
                     std::vector<double>& scratch) {
  const int U = y.rows(), B = y.cols();
  for (int b = 0; b < B; ++b) {
    scratch.resize(U);
    for (int u = 0; u < U; ++u) scratch[u] = y(u, b) + t * g(u, b);
    std::vector<double> p = project_to_simplex(scratch);
    for (int u = 0; u < U; ++u) out(u, b) = p[u];
  }
}

}  // namespace

MsaSolution solve_msa(const RateMatrix& rates, Alpha alpha,
                      const SolverSettings& settings) {
  settings.validate();
  if (alpha.is_infinite()) {
    throw std::invalid_argument("solve_msa: alpha = inf is out of scope");
  }
  const int U = rates.rates.rows(), B = rates.rates.cols();
  if (U < 1 || B < 1) throw std::invalid_argument("solve_msa: empty rate matrix");
  double rmax = 0.0;
  for (double v : rates.rates.data()) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument("solve_msa: rates must be positive and finite");
    }
    rmax = std::max(rmax, v);
  }
  // The maximizer is invariant to a positive rate scaling; normalizing keeps
  // the fixed tolerances meaningful for any bandwidth convention.
  Mat r(U, B);
  for (int u = 0; u < U; ++u) {
    for (int b = 0; b < B; ++b) r(u, b) = rates.rates(u, b) / rmax;
  }
  const double a = alpha.effective();

  auto served = [&](const Mat& y, std::vector<double>& R) {
    for (int u = 0; u < U; ++u) {
      double s = 0.0;
      for (int b = 0; b < B; ++b) s += r(u, b) * y(u, b);
      R[u] = s;
    }
  };
  auto objective_of = [&](const std::vector<double>& R) {
    double F = 0.0;
    for (double Ru : R) {
      if (Ru <= 0.0) {
        if (a >= 1.0) return -kInf;
        continue;  // zero utility below alpha = 1
      }
      F += (a == 1.0) ? std::log(Ru) : std::pow(Ru, 1.0 - a) / (1.0 - a);
    }
    return F;
  };

  MsaSolution sol;
  Mat y(U, B, 1.0 / U);
  Mat g(U, B), ytrial(U, B);
  std::vector<double> R(U), Rtrial(U), scratch;
  served(y, R);
  double F = objective_of(R);
  double step = settings.initial_step;
  int steps = 0;
  bool converged = false;

  auto term = [&](double Ru) {
    if (Ru <= 0.0) return (a >= 1.0) ? -kInf : 0.0;
    return (a == 1.0) ? std::log(Ru) : std::pow(Ru, 1.0 - a) / (1.0 - a);
  };
  auto refresh_row = [&](int u) {
    double s = 0.0;
    for (int b = 0; b < B; ++b) s += r(u, b) * y(u, b);
    R[u] = s;
  };
  auto best_marginal = [&](int b) {
    int v = 0;
    double best = -1.0;
    for (int u = 0; u < U; ++u) {
      const double m =
          (a == 0.0) ? r(u, b) : r(u, b) * std::pow(std::max(R[u], 1e-12), -a);
      if (m > best) {
        best = m;
        v = u;
      }
    }
    return v;
  };
  // Vertex refinement: hand a member's whole share in a column to the MU with
  // the best marginal there whenever that strictly improves the objective.
  // Gradient steps stall on such moves (the objective is nearly linear in a
  // small share), so this is what finally drains near-zero crumbs. Feasible
  // mass is conserved per move and only improvements are taken, so the ascent
  // and feasibility guarantees are untouched.
  auto sweep_columns = [&]() {
    bool moved_any = false;
    for (int pass = 0; pass < 8; ++pass) {
      bool moved = false;
      for (int b = 0; b < B; ++b) {
        int v = best_marginal(b);
        for (int u = 0; u < U; ++u) {
          if (u == v) continue;
          const double q = y(u, b);
          if (q <= 0.0) continue;
          const double gain = term(R[v] + r(v, b) * q) - term(R[v]);
          const double lost = term(std::max(R[u] - r(u, b) * q, 0.0)) - term(R[u]);
          if (gain + lost > 0.0) {
            y(v, b) += q;
            y(u, b) = 0.0;
            refresh_row(u);
            refresh_row(v);
            moved = true;
            v = best_marginal(b);
          }
        }
      }
      if (!moved) break;
      moved_any = true;
    }
    if (moved_any) {
      served(y, R);
      F = objective_of(R);
    }
    return moved_any;
  };

  while (steps < settings.max_iters) {
    for (int u = 0; u < U; ++u) {
      const double Ru = std::max(R[u], 1e-12);  // guards pow at a touched face
      const double marginal = (a == 0.0) ? 1.0 : std::pow(Ru, -a);
      for (int b = 0; b < B; ++b) g(u, b) = r(u, b) * marginal;
    }

    // Scale-free stationarity test: normalize each column's gradient by its
    // largest entry, take a unit projected step, and look at the movement.
    double pg = 0.0;
    for (int b = 0; b < B; ++b) {
      double gmax = 0.0;
      for (int u = 0; u < U; ++u) gmax = std::max(gmax, std::abs(g(u, b)));
      if (gmax == 0.0) continue;
      scratch.resize(U);
      for (int u = 0; u < U; ++u) scratch[u] = y(u, b) + g(u, b) / gmax;
      std::vector<double> p = project_to_simplex(scratch);
      for (int u = 0; u < U; ++u) pg = std::max(pg, std::abs(p[u] - y(u, b)));
    }
    if (pg < settings.grad_tol) {
      if (!sweep_columns()) {
        converged = true;
        break;
      }
      ++steps;
      continue;
    }

    double Fnew = -kInf;
    bool accepted = false;
    if (settings.step_rule == SolverSettings::StepRule::fixed) {
      project_columns(y, g, settings.initial_step, ytrial, scratch);
      served(ytrial, Rtrial);
      Fnew = objective_of(Rtrial);
      accepted = true;
      if (Fnew < F) sol.ascent_violation = std::max(sol.ascent_violation, F - Fnew);
    } else {
      double t = step;
      for (int bt = 0; bt < 200; ++bt) {
        project_columns(y, g, t, ytrial, scratch);
        served(ytrial, Rtrial);
        Fnew = objective_of(Rtrial);
        if (Fnew >= F) {
          accepted = true;
          step = t * 2.0;  // let the accepted step grow again next iteration
          break;
        }
        t *= settings.backtrack_factor;
        if (t < 1e-18) break;
      }
    }
    if (!accepted) {
      if (!sweep_columns()) {
        converged = true;  // no improving step exists at machine resolution
        break;
      }
      step = settings.initial_step;
      ++steps;
      continue;
    }

    for (int b = 0; b < B; ++b) {
      double colsum = 0.0;
      for (int u = 0; u < U; ++u) {
        colsum += ytrial(u, b);
        if (ytrial(u, b) < 0.0) {
          sol.feasibility_violation =
              std::max(sol.feasibility_violation, -ytrial(u, b));
        }
      }
      sol.feasibility_violation =
          std::max(sol.feasibility_violation, std::abs(colsum - 1.0));
    }

    const double improvement = Fnew - F;
    std::swap(y, ytrial);
    std::swap(R, Rtrial);
    F = Fnew;
    ++steps;
    if (steps % 200 == 0) sweep_columns();
    if (improvement <= settings.obj_tol * std::max(1.0, std::abs(F))) {
      if (!sweep_columns()) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) sweep_columns();

  sol.iterations = steps;
  sol.converged = converged;

  // KKT residual: variance of mean-normalized marginals over active shares.
  served(y, R);
  double residual = 0.0;
  for (int b = 0; b < B; ++b) {
    std::vector<double> m;
    for (int u = 0; u < U; ++u) {
      if (y(u, b) > settings.min_share_floor) {
        const double Ru = std::max(R[u], 1e-300);
        m.push_back((a == 0.0) ? r(u, b) : r(u, b) * std::pow(Ru, -a));
      }
    }
    if (m.size() < 2) continue;
    double mean = 0.0;
    for (double v : m) mean += v;
    mean /= static_cast<double>(m.size());
    if (mean == 0.0) continue;
    double var = 0.0;
    for (double v : m) {
      const double d = v / mean - 1.0;
      var += d * d;
    }
    residual = std::max(residual, var / static_cast<double>(m.size()));
  }
  sol.kkt_residual = residual;

  sol.allocation = Allocation{std::move(y)};
  sol.objective = msa_objective(rates, sol.allocation, alpha);
  return sol;
}

SsaLikeness msa_ssa_likeness(const RateMatrix& rates, const Allocation& alloc) {
  if (!rates.rates.same_shape(alloc.shares)) {
    throw std::invalid_argument("msa_ssa_likeness: shape mismatch");
  }
  const int U = rates.rates.rows(), B = rates.rates.cols();
  SsaLikeness out;
  out.per_mu.resize(U);
  std::vector<double> row(B);
  for (int u = 0; u < U; ++u) {
    double sumsq = 0.0;
    for (int b = 0; b < B; ++b) {
      row[b] = rates.rates(u, b) * alloc.shares(u, b);
      sumsq += row[b] * row[b];
    }
    if (sumsq == 0.0) {
      out.per_mu[u] = 1.0 / B;
      ++out.zero_rows;
    } else {
      out.per_mu[u] = chiu_jain(row);
    }
  }
  return out;
}

}  // namespace ssanum
