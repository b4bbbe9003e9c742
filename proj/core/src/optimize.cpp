#include "confspec/optimize.hpp"

#include <cmath>
#include <limits>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "confspec/error.hpp"

namespace confspec {

namespace {

struct Context {
  const std::function<double(const Eigen::VectorXd&)>* f;
  Eigen::VectorXd scratch;
  Eigen::VectorXd best_x;
  double best = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* ctx = static_cast<Context*>(params);
  for (Eigen::Index i = 0; i < ctx->scratch.size(); ++i) ctx->scratch[i] = gsl_vector_get(v, i);
  const double y = (*ctx->f)(ctx->scratch);
  ++ctx->evaluations;
  if (y < ctx->best) {
    ctx->best = y;
    ctx->best_x = ctx->scratch;
  }
  return std::isfinite(y) ? y : std::numeric_limits<double>::max();
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& options) {
  const auto n = static_cast<std::size_t>(x0.size());
  if (n == 0) throw Error(ErrorCode::kPreconditionViolation, "empty starting point");
  gsl_set_error_handler_off();

  Context ctx{&f, x0, x0};
  gsl_multimin_function fn{&trampoline, n, &ctx};
  gsl_vector* x = gsl_vector_alloc(n);
  gsl_vector* step = gsl_vector_alloc(n);
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x, i, x0[static_cast<Eigen::Index>(i)]);
  gsl_vector_set_all(step, options.initial_step);
  gsl_multimin_fminimizer* s = gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n);

  NelderMeadResult result;
  if (gsl_multimin_fminimizer_set(s, &fn, x, step) == GSL_SUCCESS) {
    while (ctx.evaluations < options.max_evaluations) {
      if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), options.size_tolerance) == GSL_SUCCESS) {
        result.converged = true;
        break;
      }
    }
  }
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);

  result.x = ctx.best_x;
  result.value = ctx.best;
  result.evaluations = ctx.evaluations;
  return result;
}

}  // namespace confspec
