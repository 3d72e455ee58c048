#include "asgo/objectives.hpp"

#include <cmath>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace asgo {

namespace {

// Stream id for the rotation draw, so other consumers of the same seed stay independent.
constexpr std::uint64_t kRotationStream = 0x726f74;

void check_point(const EmbeddedObjective& obj, const Vector& x, const char* where) {
  if (x.size() != obj.ambient_dim()) {
    std::ostringstream msg;
    msg << where << ": point has dimension " << x.size() << ", objective has " << obj.ambient_dim();
    throw std::invalid_argument(msg.str());
  }
  if (!x.allFinite()) throw std::invalid_argument(std::string(where) + ": non-finite input");
}

// Q is the transpose of the sign-corrected QR factor of a Gaussian matrix G.
// Rows 0..d_e-1 of Q depend only on columns 0..d_e-1 of G, so U comes from
// a thin QR and the full rotation is only formed on request.
Matrix thin_factor(const Matrix& g) {
  const Eigen::Index n = g.rows(), k = g.cols();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, k);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index i = 0; i < k; ++i)
    if (r(i, i) < 0.0) q.col(i) = -q.col(i);
  return q;
}

}  // namespace

struct EmbeddedObjective::LazyRotation {
  std::once_flag once;
  Matrix q;
};

EmbeddedObjective::EmbeddedObjective(BaseFunction base, int ambient_dim, std::uint64_t seed,
                                     EmbedOptions options)
    : base_(std::move(base)),
      ambient_dim_(ambient_dim),
      seed_(seed),
      options_(options),
      full_(std::make_shared<LazyRotation>()) {
  const int de = base_.dim;
  if (de < 1) throw std::invalid_argument("make_embedded: base function has no dimensions");
  if (ambient_dim_ < de) {
    std::ostringstream msg;
    msg << "make_embedded: D = " << ambient_dim_ << " is below d_e = " << de << " for "
        << base_.name;
    throw std::invalid_argument(msg.str());
  }
  if (static_cast<int>(base_.domain.size()) != de)
    throw std::invalid_argument("make_embedded: domain size does not match d_e for " + base_.name);

  center_.resize(de);
  half_width_.resize(de);
  for (int i = 0; i < de; ++i) {
    const auto [lo, hi] = base_.domain[static_cast<std::size_t>(i)];
    center_(i) = options_.identity_scaling ? 0.0 : 0.5 * (lo + hi);
    half_width_(i) = options_.identity_scaling ? 1.0 : 0.5 * (hi - lo);
  }

  if (options_.identity_rotation) {
    u_ = Matrix::Identity(ambient_dim_, de);
  } else {
    Rng rng = Rng(seed_).split(kRotationStream);
    u_ = thin_factor(gaussian_matrix(ambient_dim_, de, rng));
  }
}

const Matrix& EmbeddedObjective::rotation() const {
  std::call_once(full_->once, [this] {
    const int D = ambient_dim_, de = base_.dim;
    Matrix q(D, D);
    if (options_.identity_rotation) {
      q.setIdentity();
    } else {
      Rng rng = Rng(seed_).split(kRotationStream);
      // Same draw order as the constructor: the first d_e columns reproduce U.
      const Matrix g = gaussian_matrix(D, D, rng);
      Matrix f = thin_factor(g);
      f.leftCols(de) = u_;
      q = f.transpose();
    }
    full_->q = std::move(q);
  });
  return full_->q;
}

Matrix EmbeddedObjective::constant_basis() const {
  const int de = base_.dim;
  return rotation().bottomRows(ambient_dim_ - de).transpose();
}

Vector EmbeddedObjective::effective_coordinates(const Vector& x) const {
  return u_.transpose() * x;
}

Vector EmbeddedObjective::unscale(const Vector& z) const {
  return (center_.array() + half_width_.array() * z.array()).matrix();
}

Vector EmbeddedObjective::scale(const Vector& y) const {
  return ((y.array() - center_.array()) / half_width_.array()).matrix();
}

Vector EmbeddedObjective::lifted_minimizer() const { return u_ * scale(base_.minimizer); }

double EmbeddedObjective::value(const Vector& x) const {
  return base_.value(unscale(effective_coordinates(x)));
}

Vector EmbeddedObjective::gradient(const Vector& x) const {
  const Vector g = base_.gradient(unscale(effective_coordinates(x)));
  return u_ * g.cwiseProduct(half_width_);
}

EmbeddedObjective make_embedded(const BaseFunction& base, int ambient_dim, std::uint64_t seed,
                                EmbedOptions options) {
  return EmbeddedObjective(base, ambient_dim, seed, options);
}

GradMode parse_grad_mode(std::string_view name) {
  if (name == "analytic") return GradMode::analytic;
  if (name == "fd") return GradMode::fd;
  throw std::invalid_argument("unknown gradient mode '" + std::string(name) +
                              "' (expected analytic or fd)");
}

std::string_view to_string(GradMode mode) { return mode == GradMode::analytic ? "analytic" : "fd"; }

double eval(const EmbeddedObjective& obj, const Vector& x, EvalTally& tally) {
  check_point(obj, x, "eval");
  ++tally.plain_evals;
  return obj.value(x);
}

Vector grad_analytic(const EmbeddedObjective& obj, const Vector& x, EvalTally& tally) {
  check_point(obj, x, "grad_analytic");
  ++tally.gradient_samples;
  return obj.gradient(x);
}

Vector grad_fd(const EmbeddedObjective& obj, const Vector& x, EvalTally& tally) {
  check_point(obj, x, "grad_fd");
  ++tally.gradient_samples;
  const double root_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  const double f0 = obj.value(x);
  Vector g(x.size());
  Vector xh = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double h = root_eps * (1.0 + std::abs(x(i)));
    xh(i) = x(i) + h;
    // Use the representable step actually taken.
    const double step = xh(i) - x(i);
    g(i) = (obj.value(xh) - f0) / step;
    xh(i) = x(i);
  }
  return g;
}

Vector sample_gradient(const EmbeddedObjective& obj, const Vector& x, GradMode mode,
                       EvalTally& tally) {
  return mode == GradMode::analytic ? grad_analytic(obj, x, tally) : grad_fd(obj, x, tally);
}

}  // namespace asgo
