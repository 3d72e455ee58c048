#include <initializer_list>
#include <stdexcept>
#include <cmath>
#include <map>
#include <numbers>

#include "asgo/objectives.hpp"
#include "doctest.h"

using namespace asgo;

namespace {

Vector random_point(int n, Rng& rng) {
  Vector x(n);
  for (int i = 0; i < n; ++i) x(i) = rng.normal();
  return x;
}

Vector random_interior(const BaseFunction& f, Rng& rng) {
  Vector y(f.dim);
  for (int i = 0; i < f.dim; ++i) {
    const auto [lo, hi] = f.domain[static_cast<std::size_t>(i)];
    y(i) = rng.uniform(lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo));
  }
  return y;
}

Vector central_difference(const BaseFunction& f, const Vector& y) {
  Vector g(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    const double h = 1e-6 * (1.0 + std::abs(y(i)));
    Vector a = y, b = y;
    a(i) += h;
    b(i) -= h;
    g(i) = (f.value(a) - f.value(b)) / (2 * h);
  }
  return g;
}

}  // namespace

TEST_CASE("catalogue: names, effective dimensions and table minima") {
  const std::map<std::string, int> expected{
      {"beale", 2},   {"branin", 2},  {"brent", 2},     {"camel", 2},
      {"goldstein-price", 2},         {"hartmann3", 3}, {"hartmann6", 6},
      {"levy", 6},    {"rosenbrock", 7}, {"shekel5", 4}, {"shekel7", 4},
      {"shekel10", 4}, {"shubert", 2}, {"styblinski-tang", 8}, {"trid", 5},
      {"zettl", 2},   {"easom", 2}};
  const auto all = catalogue();
  CHECK(all.size() == 17);
  CHECK(benchmark_table().size() == 16);
  for (const auto& f : all) {
    REQUIRE(expected.count(f.name) == 1);
    CHECK(f.dim == expected.at(f.name));
    CHECK(static_cast<int>(f.domain.size()) == f.dim);
    CHECK(f.minimizer.size() == f.dim);
  }
  CHECK(*find_function("branin").table_f_star == 0.397887);
  CHECK(*find_function("hartmann6").table_f_star == -3.32237);
  CHECK(*find_function("trid").table_f_star == -30.0);
  CHECK(find_function("Shekel5").name == "shekel5");
  CHECK(find_function("styblinski_tang").name == "styblinski-tang");
  CHECK_THROWS_AS(find_function("nope"), std::invalid_argument);
}

TEST_CASE("catalogue: minimizers, table agreement and analytic gradients") {
  Rng rng(1);
  for (const auto& f : catalogue()) {
    CAPTURE(f.name);
    REQUIRE(f.f_star);
    CHECK(std::abs(f.value(f.minimizer) - *f.f_star) <= 1e-6);
    // The full-precision minimum rounds to the printed table value.
    const double printed = *f.table_f_star;
    CHECK(std::abs(*f.f_star - printed) <= 5e-5 * std::max(1.0, std::abs(printed)));
    for (int i = 0; i < f.dim; ++i) {
      CHECK(f.minimizer(i) >= f.domain[static_cast<std::size_t>(i)].lo);
      CHECK(f.minimizer(i) <= f.domain[static_cast<std::size_t>(i)].hi);
    }
    for (int t = 0; t < 20; ++t) {
      const Vector y = random_interior(f, rng);
      const Vector ga = f.gradient(y);
      const Vector gc = central_difference(f, y);
      CHECK((ga - gc).norm() <= 1e-5 * std::max(1.0, ga.norm()));
    }
  }
}

TEST_CASE("catalogue: no sampled point beats the stored minimum") {
  Rng rng(2);
  for (const auto& f : catalogue()) {
    CAPTURE(f.name);
    double best = std::numeric_limits<double>::infinity();
    for (int t = 0; t < 20000; ++t) {
      Vector y(f.dim);
      for (int i = 0; i < f.dim; ++i) {
        const auto [lo, hi] = f.domain[static_cast<std::size_t>(i)];
        y(i) = rng.uniform(lo, hi);
      }
      best = std::min(best, f.value(y));
    }
    CHECK(best >= *f.f_star - 1e-9);
  }
}

TEST_CASE("alpha_easom") {
  const double pi = std::numbers::pi;
  Vector center(2);
  center << pi, pi;
  for (double a : {1.0, 0.5, 0.1}) CHECK(alpha_easom(a).value(center) == doctest::Approx(-1.0));
  const double origin = alpha_easom(1.0).value(Vector::Zero(2));
  CHECK(origin == doctest::Approx(-std::exp(-2 * pi * pi)).epsilon(1e-12));
  CHECK(origin == doctest::Approx(-2.675e-9).epsilon(1e-3));
  const Vector off = center.array() + 1.0;
  CHECK(std::abs(alpha_easom(0.1).value(off)) > std::abs(alpha_easom(1.0).value(off)));
  CHECK_THROWS_AS(alpha_easom(0.0), std::invalid_argument);
  CHECK_THROWS_AS(alpha_easom(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(alpha_easom(1.5), std::invalid_argument);
  CHECK(alpha_easom(1.0).name == "easom");
}

TEST_CASE("polynomial_example") {
  const auto f = polynomial_example();
  auto at = [&](double x) { return f.value(Vector::Constant(1, x)); };
  auto slope = [&](double x) { return f.gradient(Vector::Constant(1, x))(0); };
  CHECK(at(0.0) == -1.0);
  CHECK(at(1.0) == 0.0);
  CHECK(at(-1.0) == 0.0);
  CHECK(at(2.0) == 0.0);
  CHECK(at(-2.0) == 0.0);
  CHECK(slope(2.0) == 0.0);
  double max_slope = 0.0, arg = 0.0;
  for (int i = 0; i <= 200000; ++i) {
    const double x = -1.0 + 2.0 * i / 200000;
    if (std::abs(slope(x)) > max_slope) {
      max_slope = std::abs(slope(x));
      arg = std::abs(x);
    }
  }
  CHECK(max_slope == doctest::Approx(8.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-9));
  CHECK(arg == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-4));
}

TEST_CASE("make_embedded: lifted minimizer attains the minimum") {
  for (int D : {100, 1000}) {
    for (const auto& base : catalogue()) {
      CAPTURE(base.name);
      CAPTURE(D);
      const auto obj = make_embedded(base, D, 7);
      EvalTally t;
      CHECK(std::abs(eval(obj, obj.lifted_minimizer(), t) - *base.f_star) <= 1e-6);
    }
  }
  const auto branin = make_embedded(find_function("branin"), 100, 3);
  EvalTally t;
  const double v = eval(branin, branin.lifted_minimizer(), t);
  CHECK(std::abs(v - *branin.f_star()) <= 1e-9);
  CHECK(std::abs(v - 0.397887) <= 1e-6);
  CHECK_THROWS_AS(make_embedded(find_function("hartmann6"), 5, 0), std::invalid_argument);
}

TEST_CASE("make_embedded: definition by direct composition with Q") {
  Rng rng(4);
  for (const auto& base : catalogue()) {
    CAPTURE(base.name);
    const auto obj = make_embedded(base, 60, 11);
    const Matrix& q = obj.rotation();
    CHECK((q.transpose() * q - Matrix::Identity(60, 60)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK((q.topRows(base.dim).transpose() - obj.effective_basis()).cwiseAbs().maxCoeff() == 0.0);
    for (int t = 0; t < 5; ++t) {
      const Vector x = random_point(60, rng);
      const Vector z = (q * x).head(base.dim);
      Vector y(base.dim);
      for (int i = 0; i < base.dim; ++i) {
        const auto [lo, hi] = base.domain[static_cast<std::size_t>(i)];
        y(i) = 0.5 * (lo + hi) + 0.5 * (hi - lo) * z(i);
      }
      const double direct = base.value(y);
      CHECK(std::abs(obj.value(x) - direct) <= 1e-12 * std::max(1.0, std::abs(direct)) + 1e-13);
    }
  }
}

TEST_CASE("make_embedded: identity rotation at D = d_e reproduces the scaled base") {
  const auto base = find_function("camel");
  const auto obj = make_embedded(base, 2, 0, {.identity_rotation = true});
  Vector z(2);
  z << 0.3, -0.7;
  Vector y(2);
  y << 0.3 * 3.0, -0.7 * 2.0;
  CHECK(obj.value(z) == base.value(y));
  CHECK(obj.scale(y).isApprox(z));
  CHECK(obj.unscale(z).isApprox(y));
}

TEST_CASE("embedded gradients live in the effective subspace") {
  Rng rng(9);
  for (const auto& base : catalogue()) {
    CAPTURE(base.name);
    const auto obj = make_embedded(base, 100, 2);
    const Matrix v = obj.constant_basis();
    CHECK(v.cols() == 100 - base.dim);
    for (int t = 0; t < 50; ++t) {
      const Vector x = random_point(100, rng);
      const Vector g = obj.gradient(x);
      CHECK((v.transpose() * g).norm() <= 1e-10 * std::max(1.0, g.norm()));
      const Vector shifted = x + v * random_point(static_cast<int>(v.cols()), rng);
      const double f0 = obj.value(x);
      CHECK(std::abs(obj.value(shifted) - f0) <= 1e-10 * std::max(1.0, std::abs(f0)));
    }
  }
  const auto rosen = make_embedded(find_function("rosenbrock"), 1000, 5);
  const Matrix v = rosen.constant_basis();
  for (int t = 0; t < 10; ++t) {
    const Vector g = rosen.gradient(random_point(1000, rng));
    CHECK((v.transpose() * g).norm() <= 1e-10 * std::max(1.0, g.norm()));
  }
}

TEST_CASE("gradients: test objectives and finite-difference agreement") {
  EvalTally t;
  const auto flat = make_embedded(constant_function(3, 2.5), 10, 1);
  Rng rng(3);
  const Vector x = random_point(10, rng);
  CHECK(eval(flat, x, t) == 2.5);
  CHECK(grad_analytic(flat, x, t).isZero(0.0));

  Vector c(3);
  c << 1.5, -2.0, 0.25;
  const auto lin = make_embedded(linear_function(c), 6, 0,
                                 {.identity_rotation = true, .identity_scaling = true});
  Vector expected = Vector::Zero(6);
  expected.head(3) = c;
  CHECK(grad_analytic(lin, x.head(6), t) == expected);
  // Forward differences are exact on linear functions; at the origin f has
  // no rounding to amplify, elsewhere rounding of f is divided by h ≈ 1.5e-8.
  CHECK((grad_fd(lin, Vector::Zero(6), t) - expected).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK((grad_fd(lin, x.head(6), t) - expected).norm() <= 1e-7);

  const auto quad = make_embedded(quadratic_function(3), 3, 0,
                                  {.identity_rotation = true, .identity_scaling = true});
  const Vector g0 = grad_fd(quad, Vector::Zero(3), t);
  // Bias of forward differences on ‖y‖² at 0 is exactly the step h = √ε.
  CHECK(g0.norm() <= 1e-7);
  CHECK(g0(0) == doctest::Approx(std::sqrt(std::numeric_limits<double>::epsilon())).epsilon(1e-6));

  for (const char* name : {"levy", "camel"}) {
    CAPTURE(name);
    const auto obj = make_embedded(find_function(name), 100, 4);
    for (int i = 0; i < 20; ++i) {
      const Vector p = random_point(100, rng);
      const Vector ga = grad_analytic(obj, p, t);
      const Vector gf = grad_fd(obj, p, t);
      CHECK((ga - gf).norm() <= 1e-5 * std::max(1.0, ga.norm()));
    }
  }
}

TEST_CASE("evaluation accounting and input validation") {
  const auto obj = make_embedded(find_function("branin"), 40, 1);
  EvalTally t;
  Rng rng(5);
  for (int i = 0; i < 7; ++i) eval(obj, random_point(40, rng), t);
  for (int i = 0; i < 3; ++i) grad_fd(obj, random_point(40, rng), t);
  grad_analytic(obj, random_point(40, rng), t);
  CHECK(t.plain_evals == 7);
  CHECK(t.gradient_samples == 4);
  CHECK(t.units(40) == 7 + 4 * 41);
  CHECK(t.units(40, GradientCost::raw) == 11);

  EvalTally other;
  other.plain_evals = 2;
  t += other;
  CHECK(t.plain_evals == 9);

  Vector bad = Vector::Zero(40);
  bad(3) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eval(obj, bad, t), std::invalid_argument);
  CHECK_THROWS_AS(eval(obj, Vector::Zero(39), t), std::invalid_argument);
  CHECK_THROWS_AS(grad_fd(obj, bad, t), std::invalid_argument);

  CHECK(parse_grad_mode("fd") == GradMode::fd);
  CHECK(to_string(GradMode::analytic) == "analytic");
  CHECK_THROWS_AS(parse_grad_mode("central"), std::invalid_argument);
}

TEST_CASE("make_embedded: deterministic per seed") {
  const auto base = find_function("hartmann6");
  const auto a = make_embedded(base, 80, 42);
  const auto b = make_embedded(base, 80, 42);
  const auto c = make_embedded(base, 80, 43);
  CHECK(a.rotation() == b.rotation());
  CHECK(a.effective_basis() == b.effective_basis());
  CHECK(a.effective_basis() != c.effective_basis());
}
