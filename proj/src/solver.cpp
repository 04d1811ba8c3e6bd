#include "maxent/solver.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "maxent/errors.hpp"
#include "maxent/povm.hpp"

namespace maxent {

namespace {

Matrix assemble(const CompatibilityInstance& instance, const RealVector& c) {
  Matrix h = Matrix::Zero(instance.dim(), instance.dim());
  for (int i = 0; i < instance.size(); ++i)
    h += c(i) * instance.observables()[static_cast<size_t>(i)].dense();
  return h;
}

RealVector achieved_expectations(const CompatibilityInstance& instance,
                                 const RealVector& c) {
  const DensityMatrix rho = gibbs_state(assemble(instance, c));
  RealVector out(instance.size());
  for (int i = 0; i < instance.size(); ++i)
    out(i) = expectation(rho, instance.observables()[static_cast<size_t>(i)]);
  return out;
}

double squared_loss_of(const CompatibilityInstance& instance,
                       const RealVector& achieved) {
  return (instance.targets() - achieved).squaredNorm();
}

using ObjectiveFn = std::function<double(const RealVector&)>;

RealVector central_gradient(const ObjectiveFn& f, const RealVector& c,
                            double h) {
  RealVector g(c.size());
  RealVector probe = c;
  for (Index i = 0; i < c.size(); ++i) {
    probe(i) = c(i) + h;
    const double fp = f(probe);
    probe(i) = c(i) - h;
    const double fm = f(probe);
    probe(i) = c(i);
    g(i) = (fp - fm) / (2.0 * h);
  }
  return g;
}

std::string describe_iterate(int iteration, const RealVector& c) {
  std::ostringstream os;
  os << "iteration " << iteration << ", c = [";
  for (Index i = 0; i < c.size(); ++i) os << (i ? ", " : "") << c(i);
  os << "]";
  return os.str();
}

struct MinimizeOutcome {
  RealVector c;
  int iterations = 0;
  bool cap_saturated = false;
  std::vector<double> history;
};

MinimizeOutcome minimize(const ObjectiveFn& f, RealVector c,
                         const SolverConfig& config, double stop_threshold,
                         double stop_offset) {
  const Index m = c.size();
  const double cap = config.coeff_cap;
  auto clamp = [cap](RealVector v) {
    return v.cwiseMax(-cap).cwiseMin(cap).eval();
  };

  c = clamp(std::move(c));
  double fc = f(c);
  if (!std::isfinite(fc))
    throw NumericalBreakdownError("loss is not finite at " + describe_iterate(0, c));
  RealVector g = central_gradient(f, c, config.fd_step);
  RealMatrix hinv = RealMatrix::Identity(m, m);
  bool hessian_fresh = true;

  MinimizeOutcome out;
  out.history.push_back(fc);

  const bool quasi_newton = config.optimizer == Optimizer::QuasiNewton;
  int it = 0;
  for (; it < config.max_iters; ++it) {
    if (fc - stop_offset <= stop_threshold) break;
    const size_t n_hist = out.history.size();
    if (static_cast<int>(n_hist) > config.stall_window) {
      const double ref =
          out.history[n_hist - 1 - static_cast<size_t>(config.stall_window)];
      if (ref - fc < config.stall_rtol * std::max(std::abs(ref), 1e-300))
        break;
    }

    RealVector p = quasi_newton ? RealVector(-(hinv * g)) : RealVector(-g);
    double slope = g.dot(p);
    if (!(slope < 0)) {
      hinv.setIdentity();
      hessian_fresh = true;
      p = -g;
      slope = g.dot(p);
      if (!(slope < 0)) break;  // zero gradient
    }

    double alpha = 1.0;
    bool accepted = false;
    bool clamped = false;
    RealVector c_new;
    double f_new = fc;
    for (int ls = 0; ls < 60; ++ls) {
      c_new = clamp(c + alpha * p);
      const RealVector step = c_new - c;
      if (step.isZero(0.0)) break;  // pinned against the box
      clamped = (step - alpha * p).cwiseAbs().maxCoeff() > 0;
      f_new = f(c_new);
      if (!std::isfinite(f_new))
        throw NumericalBreakdownError("loss is not finite at " +
                                      describe_iterate(it + 1, c_new));
      const bool sufficient =
          clamped ? f_new < fc : f_new <= fc + 1e-4 * alpha * slope;
      if (sufficient) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) break;  // no descent step found: stalled

    // The boundary fits run down an exponentially flat valley whose optimum
    // sits at infinity; a quadratic model never suggests steps long enough,
    // so extend the accepted full step while it keeps paying off.
    if (alpha == 1.0 && !clamped) {
      for (int grow = 0; grow < 20; ++grow) {
        const double alpha_try = 2.0 * alpha;
        const RealVector c_try = clamp(c + alpha_try * p);
        if ((c_try - c - alpha_try * p).cwiseAbs().maxCoeff() > 0) break;
        const double f_try = f(c_try);
        if (!std::isfinite(f_try))
          throw NumericalBreakdownError("loss is not finite at " +
                                        describe_iterate(it + 1, c_try));
        if (!(f_try < f_new) || f_try > fc + 1e-4 * alpha_try * slope) break;
        alpha = alpha_try;
        c_new = c_try;
        f_new = f_try;
      }
    }

    const RealVector g_new = central_gradient(f, c_new, config.fd_step);
    if (quasi_newton) {
      if (clamped) {
        // Curvature measured against the box is unreliable.
        hinv.setIdentity();
        hessian_fresh = true;
      } else {
        const RealVector s = c_new - c;
        const RealVector y = g_new - g;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
          if (hessian_fresh) {
            // Scale the unit seed to the measured curvature before the
            // first update.
            hinv = (sy / y.squaredNorm()) * RealMatrix::Identity(m, m);
            hessian_fresh = false;
          }
          const RealMatrix outer =
              RealMatrix::Identity(m, m) - (s * y.transpose()) / sy;
          hinv = outer * hinv * outer.transpose() +
                 (s * s.transpose()) / sy;
        }
      }
    }
    c = std::move(c_new);
    fc = f_new;
    g = g_new;
    out.history.push_back(fc);
  }

  out.c = std::move(c);
  out.iterations = it;
  out.cap_saturated = out.c.cwiseAbs().maxCoeff() >= cap - 1e-9;
  return out;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(epsilon > 0) || !(epsilon < 1))
    throw InvalidInstanceError("solver epsilon must lie in (0,1)");
  if (max_iters < 1 || restarts < 1)
    throw InvalidInstanceError("max_iters and restarts must be positive");
  if (!(fd_step > 0) || !(coeff_cap > 0) || stall_window < 1 ||
      !(stall_rtol > 0))
    throw InvalidInstanceError("solver config fields must be positive");
}

double loss(const CompatibilityInstance& instance, const RealVector& c) {
  if (c.size() != instance.size())
    throw InvalidInstanceError("coefficient vector has length " +
                               std::to_string(c.size()) + ", expected " +
                               std::to_string(instance.size()));
  return squared_loss_of(instance, achieved_expectations(instance, c));
}

RealVector gradient_fd(const CompatibilityInstance& instance,
                       const RealVector& c, double fd_step) {
  if (c.size() != instance.size())
    throw InvalidInstanceError("coefficient vector length mismatch");
  const ObjectiveFn f = [&instance](const RealVector& v) {
    return squared_loss_of(instance, achieved_expectations(instance, v));
  };
  return central_gradient(f, c, fd_step);
}

static MaxEntState restarted_minimize(
    const CompatibilityInstance& instance, const SolverConfig& config,
    const ObjectiveFn& f, double stop_threshold, double stop_offset,
    const std::optional<RealVector>& warm_start = {}) {
  std::optional<MaxEntState> best;
  double best_objective = 0.0;
  for (int restart = 0; restart < config.restarts; ++restart) {
    std::mt19937_64 rng(config.seed +
                        0x9E3779B97F4A7C15ULL *
                            (static_cast<std::uint64_t>(restart) + 1));
    RealVector c0(instance.size());
    for (Index i = 0; i < c0.size(); ++i)
      c0(i) = 2.0 * uniform_unit(rng) - 1.0;
    if (restart == 0 && warm_start) {
      if (warm_start->size() != instance.size())
        throw InvalidInstanceError("warm start has the wrong length");
      c0 = *warm_start;
    }

    MinimizeOutcome run =
        minimize(f, std::move(c0), config, stop_threshold, stop_offset);

    const double objective = run.history.back();
    const RealVector achieved = achieved_expectations(instance, run.c);
    const double sq = squared_loss_of(instance, achieved);
    if (!best || objective < best_objective) {
      best_objective = objective;
      MaxEntState state{run.c,
                        gibbs_state(assemble(instance, run.c)),
                        achieved,
                        sq,
                        run.iterations,
                        sq <= config.epsilon,
                        run.cap_saturated,
                        restart,
                        std::move(run.history)};
      best.emplace(std::move(state));
    }
    if (best_objective - stop_offset <= stop_threshold) break;
  }
  return *best;
}

MaxEntState solve(const CompatibilityInstance& instance,
                  const SolverConfig& config) {
  config.validate();

  // Stopping: squared loss ≤ ε directly; for the cross-entropy objective,
  // KL = L − H(data) ≤ ε/2, which implies Σ(Δp)² ≤ ε by Pinsker.
  double stop_threshold = config.epsilon;
  double stop_offset = 0.0;
  if (config.objective == Objective::CrossEntropy) {
    const ProbabilityVector data{instance.targets()};
    stop_offset = data.entropy();
    stop_threshold = config.epsilon / 2.0;
  }

  ObjectiveFn f;
  if (config.objective == Objective::Squared) {
    f = [&instance](const RealVector& c) {
      return squared_loss_of(instance, achieved_expectations(instance, c));
    };
  } else {
    f = [&instance](const RealVector& c) {
      return cross_entropy_loss(instance, c);
    };
  }
  return restarted_minimize(instance, config, f, stop_threshold, stop_offset);
}

MaxEntState solve_with_objective(
    const CompatibilityInstance& instance, const SolverConfig& config,
    const std::function<double(const RealVector&)>& objective,
    double stop_below, const std::optional<RealVector>& warm_start) {
  config.validate();
  return restarted_minimize(instance, config, objective, stop_below, 0.0,
                            warm_start);
}

}  // namespace maxent
