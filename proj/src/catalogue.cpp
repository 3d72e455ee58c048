#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "asgo/objectives.hpp"

namespace asgo {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Interval> box(int dim, double lo, double hi) {
  return std::vector<Interval>(static_cast<std::size_t>(dim), Interval{lo, hi});
}

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v;
}

BaseFunction beale() {
  BaseFunction f;
  f.name = "beale";
  f.dim = 2;
  f.domain = box(2, -4.5, 4.5);
  f.f_star = 0.0;
  f.table_f_star = 0.0;
  f.minimizer = vec({3.0, 0.5});
  f.value = [](const Vector& v) {
    const double x = v(0), y = v(1);
    const double t1 = 1.5 - x + x * y;
    const double t2 = 2.25 - x + x * y * y;
    const double t3 = 2.625 - x + x * y * y * y;
    return t1 * t1 + t2 * t2 + t3 * t3;
  };
  f.gradient = [](const Vector& v) {
    const double x = v(0), y = v(1);
    const double t1 = 1.5 - x + x * y;
    const double t2 = 2.25 - x + x * y * y;
    const double t3 = 2.625 - x + x * y * y * y;
    return vec({2 * t1 * (y - 1) + 2 * t2 * (y * y - 1) + 2 * t3 * (y * y * y - 1),
                2 * t1 * x + 4 * t2 * x * y + 6 * t3 * x * y * y});
  };
  return f;
}

BaseFunction branin() {
  constexpr double a = 1.0, b = 5.1 / (4 * kPi * kPi), c = 5 / kPi, r = 6, s = 10,
                   t = 1 / (8 * kPi);
  BaseFunction f;
  f.name = "branin";
  f.dim = 2;
  f.domain = {{-5, 10}, {0, 15}};
  f.f_star = 0.39788735772973816;
  f.table_f_star = 0.397887;
  f.minimizer = vec({kPi, 2.275});
  f.value = [=](const Vector& v) {
    const double u = v(1) - b * v(0) * v(0) + c * v(0) - r;
    return a * u * u + s * (1 - t) * std::cos(v(0)) + s;
  };
  f.gradient = [=](const Vector& v) {
    const double u = v(1) - b * v(0) * v(0) + c * v(0) - r;
    return vec({2 * a * u * (c - 2 * b * v(0)) - s * (1 - t) * std::sin(v(0)), 2 * a * u});
  };
  return f;
}

BaseFunction brent() {
  BaseFunction f;
  f.name = "brent";
  f.dim = 2;
  f.domain = box(2, -10, 10);
  // f(-10, -10) = exp(-200), zero in double precision against any tolerance.
  f.f_star = 0.0;
  f.table_f_star = 0.0;
  f.minimizer = vec({-10.0, -10.0});
  f.value = [](const Vector& v) {
    return (v(0) + 10) * (v(0) + 10) + (v(1) + 10) * (v(1) + 10) +
           std::exp(-v(0) * v(0) - v(1) * v(1));
  };
  f.gradient = [](const Vector& v) {
    const double e = std::exp(-v(0) * v(0) - v(1) * v(1));
    return vec({2 * (v(0) + 10) - 2 * v(0) * e, 2 * (v(1) + 10) - 2 * v(1) * e});
  };
  return f;
}

BaseFunction camel() {
  BaseFunction f;
  f.name = "camel";
  f.dim = 2;
  f.domain = {{-3, 3}, {-2, 2}};
  f.f_star = -1.0316284534898774;
  f.table_f_star = -1.0316;
  f.minimizer = vec({0.08984200893527233, -0.712656403019058});
  f.value = [](const Vector& v) {
    const double x = v(0), y = v(1), x2 = x * x, y2 = y * y;
    return (4 - 2.1 * x2 + x2 * x2 / 3) * x2 + x * y + (-4 + 4 * y2) * y2;
  };
  f.gradient = [](const Vector& v) {
    const double x = v(0), y = v(1), x2 = x * x;
    return vec({8 * x - 8.4 * x2 * x + 2 * x2 * x2 * x + y, x - 8 * y + 16 * y * y * y});
  };
  return f;
}

BaseFunction goldstein_price() {
  BaseFunction f;
  f.name = "goldstein-price";
  f.dim = 2;
  f.domain = box(2, -2, 2);
  f.f_star = 3.0;
  f.table_f_star = 3.0;
  f.minimizer = vec({0.0, -1.0});
  f.value = [](const Vector& v) {
    const double x = v(0), y = v(1);
    const double s = x + y + 1, d = 2 * x - 3 * y;
    const double b = 19 - 14 * x + 3 * x * x - 14 * y + 6 * x * y + 3 * y * y;
    const double e = 18 - 32 * x + 12 * x * x + 48 * y - 36 * x * y + 27 * y * y;
    return (1 + s * s * b) * (30 + d * d * e);
  };
  f.gradient = [](const Vector& v) {
    const double x = v(0), y = v(1);
    const double s = x + y + 1, d = 2 * x - 3 * y;
    const double b = 19 - 14 * x + 3 * x * x - 14 * y + 6 * x * y + 3 * y * y;
    const double e = 18 - 32 * x + 12 * x * x + 48 * y - 36 * x * y + 27 * y * y;
    const double a = 1 + s * s * b;
    const double c = 30 + d * d * e;
    const double b_grad = -14 + 6 * x + 6 * y;  // ∂b/∂x = ∂b/∂y
    const double a_x = 2 * s * b + s * s * b_grad;
    const double c_x = 4 * d * e + d * d * (-32 + 24 * x - 36 * y);
    const double c_y = -6 * d * e + d * d * (48 - 36 * x + 54 * y);
    return vec({a_x * c + a * c_x, a_x * c + a * c_y});
  };
  return f;
}

template <std::size_t N>
BaseFunction hartmann(std::string name, const std::array<std::array<double, N>, 4>& a,
                      const std::array<std::array<double, N>, 4>& p, double f_star,
                      double table_f_star, Vector minimizer) {
  static constexpr std::array<double, 4> alpha{1.0, 1.2, 3.0, 3.2};
  BaseFunction f;
  f.name = std::move(name);
  f.dim = static_cast<int>(N);
  f.domain = box(f.dim, 0, 1);
  f.f_star = f_star;
  f.table_f_star = table_f_star;
  f.minimizer = std::move(minimizer);
  f.value = [a, p](const Vector& x) {
    double sum = 0;
    for (std::size_t i = 0; i < 4; ++i) {
      double inner = 0;
      for (std::size_t j = 0; j < N; ++j) {
        const double diff = x(static_cast<Eigen::Index>(j)) - p[i][j];
        inner += a[i][j] * diff * diff;
      }
      sum += alpha[i] * std::exp(-inner);
    }
    return -sum;
  };
  f.gradient = [a, p](const Vector& x) {
    Vector g = Vector::Zero(static_cast<Eigen::Index>(N));
    for (std::size_t i = 0; i < 4; ++i) {
      double inner = 0;
      for (std::size_t j = 0; j < N; ++j) {
        const double diff = x(static_cast<Eigen::Index>(j)) - p[i][j];
        inner += a[i][j] * diff * diff;
      }
      const double w = alpha[i] * std::exp(-inner);
      for (std::size_t j = 0; j < N; ++j)
        g(static_cast<Eigen::Index>(j)) += 2 * w * a[i][j] * (x(static_cast<Eigen::Index>(j)) - p[i][j]);
    }
    return g;
  };
  return f;
}

BaseFunction hartmann3() {
  return hartmann<3>("hartmann3",
                     {{{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}}},
                     {{{0.3689, 0.1170, 0.2673},
                       {0.4699, 0.4387, 0.7470},
                       {0.1091, 0.8732, 0.5547},
                       {0.0381, 0.5743, 0.8828}}},
                     -3.862779787332663, -3.86278,
                     vec({0.11458888122541287, 0.5556488954739371, 0.8525469842172746}));
}

BaseFunction hartmann6() {
  return hartmann<6>("hartmann6",
                     {{{10, 3, 17, 3.5, 1.7, 8},
                       {0.05, 10, 17, 0.1, 8, 14},
                       {3, 3.5, 1.7, 10, 17, 8},
                       {17, 8, 0.05, 10, 0.1, 14}}},
                     {{{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                       {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                       {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                       {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}}},
                     -3.3223680114155147, -3.32237,
                     vec({0.20168950909365746, 0.15001069354111374, 0.4768739729250998,
                          0.2753324275220782, 0.3116516172395686, 0.6573005345536702}));
}

BaseFunction levy() {
  constexpr int n = 6;
  BaseFunction f;
  f.name = "levy";
  f.dim = n;
  f.domain = box(n, -10, 10);
  f.f_star = 0.0;
  f.table_f_star = 0.0;
  f.minimizer = Vector::Ones(n);
  f.value = [](const Vector& x) {
    const Eigen::Index d = x.size();
    const Vector w = (1.0 + (x.array() - 1.0) / 4.0).matrix();
    const double s1 = std::sin(kPi * w(0));
    double sum = s1 * s1;
    for (Eigen::Index i = 0; i + 1 < d; ++i) {
      const double si = std::sin(kPi * w(i) + 1);
      sum += (w(i) - 1) * (w(i) - 1) * (1 + 10 * si * si);
    }
    const double sd = std::sin(2 * kPi * w(d - 1));
    sum += (w(d - 1) - 1) * (w(d - 1) - 1) * (1 + sd * sd);
    return sum;
  };
  f.gradient = [](const Vector& x) {
    const Eigen::Index d = x.size();
    const Vector w = (1.0 + (x.array() - 1.0) / 4.0).matrix();
    Vector gw = Vector::Zero(d);
    gw(0) += kPi * std::sin(2 * kPi * w(0));
    for (Eigen::Index i = 0; i + 1 < d; ++i) {
      const double si = std::sin(kPi * w(i) + 1);
      gw(i) += 2 * (w(i) - 1) * (1 + 10 * si * si) +
               (w(i) - 1) * (w(i) - 1) * 10 * kPi * std::sin(2 * (kPi * w(i) + 1));
    }
    const double wd = w(d - 1);
    const double sd = std::sin(2 * kPi * wd);
    gw(d - 1) += 2 * (wd - 1) * (1 + sd * sd) + (wd - 1) * (wd - 1) * 2 * kPi * std::sin(4 * kPi * wd);
    return Vector(gw / 4.0);
  };
  return f;
}

BaseFunction rosenbrock() {
  constexpr int n = 7;
  BaseFunction f;
  f.name = "rosenbrock";
  f.dim = n;
  f.domain = box(n, -5, 10);
  f.f_star = 0.0;
  f.table_f_star = 0.0;
  f.minimizer = Vector::Ones(n);
  f.value = [](const Vector& x) {
    double sum = 0;
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x(i + 1) - x(i) * x(i);
      sum += 100 * a * a + (x(i) - 1) * (x(i) - 1);
    }
    return sum;
  };
  f.gradient = [](const Vector& x) {
    Vector g = Vector::Zero(x.size());
    for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
      const double a = x(i + 1) - x(i) * x(i);
      g(i) += -400 * x(i) * a + 2 * (x(i) - 1);
      g(i + 1) += 200 * a;
    }
    return g;
  };
  return f;
}

BaseFunction shekel(int m, double f_star, double table_f_star, Vector minimizer) {
  static constexpr std::array<double, 10> beta{0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};
  static constexpr std::array<std::array<double, 4>, 10> centers{{{4, 4, 4, 4},
                                                                  {1, 1, 1, 1},
                                                                  {8, 8, 8, 8},
                                                                  {6, 6, 6, 6},
                                                                  {3, 7, 3, 7},
                                                                  {2, 9, 2, 9},
                                                                  {5, 3, 5, 3},
                                                                  {8, 1, 8, 1},
                                                                  {6, 2, 6, 2},
                                                                  {7, 3.6, 7, 3.6}}};
  BaseFunction f;
  f.name = "shekel" + std::to_string(m);
  f.dim = 4;
  f.domain = box(4, 0, 10);
  f.f_star = f_star;
  f.table_f_star = table_f_star;
  f.minimizer = std::move(minimizer);
  f.value = [m](const Vector& x) {
    double sum = 0;
    for (int i = 0; i < m; ++i) {
      double s = beta[i];
      for (int j = 0; j < 4; ++j) s += (x(j) - centers[i][j]) * (x(j) - centers[i][j]);
      sum -= 1.0 / s;
    }
    return sum;
  };
  f.gradient = [m](const Vector& x) {
    Vector g = Vector::Zero(4);
    for (int i = 0; i < m; ++i) {
      double s = beta[i];
      for (int j = 0; j < 4; ++j) s += (x(j) - centers[i][j]) * (x(j) - centers[i][j]);
      for (int j = 0; j < 4; ++j) g(j) += 2 * (x(j) - centers[i][j]) / (s * s);
    }
    return g;
  };
  return f;
}

double shubert_factor(double x) {
  double s = 0;
  for (int j = 1; j <= 5; ++j) s += j * std::cos((j + 1) * x + j);
  return s;
}

double shubert_factor_prime(double x) {
  double s = 0;
  for (int j = 1; j <= 5; ++j) s -= j * (j + 1) * std::sin((j + 1) * x + j);
  return s;
}

BaseFunction shubert() {
  BaseFunction f;
  f.name = "shubert";
  f.dim = 2;
  f.domain = box(2, -10, 10);
  f.f_star = -186.73090883102392;
  f.table_f_star = -186.7309;
  f.minimizer = vec({-7.083506409397382, 4.858056877022195});
  f.value = [](const Vector& x) { return shubert_factor(x(0)) * shubert_factor(x(1)); };
  f.gradient = [](const Vector& x) {
    return vec({shubert_factor_prime(x(0)) * shubert_factor(x(1)),
                shubert_factor(x(0)) * shubert_factor_prime(x(1))});
  };
  return f;
}

BaseFunction styblinski_tang() {
  constexpr int n = 8;
  constexpr double x_star = -2.903534027771178;
  BaseFunction f;
  f.name = "styblinski-tang";
  f.dim = n;
  f.domain = box(n, -5, 5);
  f.f_star = -313.32932563017124;
  f.table_f_star = -313.329;
  f.minimizer = Vector::Constant(n, x_star);
  f.value = [](const Vector& x) {
    const auto a = x.array();
    return 0.5 * (a.pow(4) - 16 * a.square() + 5 * a).sum();
  };
  f.gradient = [](const Vector& x) {
    const auto a = x.array();
    return Vector((0.5 * (4 * a.cube() - 32 * a + 5)).matrix());
  };
  return f;
}

BaseFunction trid() {
  constexpr int n = 5;
  BaseFunction f;
  f.name = "trid";
  f.dim = n;
  f.domain = box(n, -25, 25);
  f.f_star = -30.0;
  f.table_f_star = -30.0;
  f.minimizer = vec({5, 8, 9, 8, 5});
  f.value = [](const Vector& x) {
    double sum = (x.array() - 1).square().sum();
    for (Eigen::Index i = 1; i < x.size(); ++i) sum -= x(i) * x(i - 1);
    return sum;
  };
  f.gradient = [](const Vector& x) {
    Vector g = (2 * (x.array() - 1)).matrix();
    for (Eigen::Index i = 1; i < x.size(); ++i) {
      g(i) -= x(i - 1);
      g(i - 1) -= x(i);
    }
    return g;
  };
  return f;
}

BaseFunction zettl() {
  BaseFunction f;
  f.name = "zettl";
  f.dim = 2;
  f.domain = box(2, -5, 5);
  f.f_star = -0.003791237220468898;
  f.table_f_star = -0.00379;
  f.minimizer = vec({-0.029895985207942802, 0.0});
  f.value = [](const Vector& x) {
    const double u = x(0) * x(0) + x(1) * x(1) - 2 * x(0);
    return u * u + 0.25 * x(0);
  };
  f.gradient = [](const Vector& x) {
    const double u = x(0) * x(0) + x(1) * x(1) - 2 * x(0);
    return vec({2 * u * (2 * x(0) - 2) + 0.25, 4 * u * x(1)});
  };
  return f;
}

std::string normalize(std::string_view name) {
  std::string out(name);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c == '_') c = '-';
  }
  return out;
}

}  // namespace

BaseFunction alpha_easom(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("alpha_easom: alpha must lie in (0, 1], got " + std::to_string(alpha));
  BaseFunction f;
  f.name = alpha == 1.0 ? "easom" : "alpha-easom";
  f.dim = 2;
  // Sampling difficulty depends on this box; [-10, 10] keeps the
  // standard-normal samples within a few peak widths of the optimum.
  f.domain = box(2, -10, 10);
  f.f_star = -1.0;
  f.table_f_star = -1.0;
  f.minimizer = vec({kPi, kPi});
  f.value = [alpha](const Vector& x) {
    const double p1 = alpha * (x(0) - kPi) + kPi;
    const double p2 = alpha * (x(1) - kPi) + kPi;
    return -std::cos(p1) * std::cos(p2) *
           std::exp(-(p1 - kPi) * (p1 - kPi) - (p2 - kPi) * (p2 - kPi));
  };
  f.gradient = [alpha](const Vector& x) {
    const double p1 = alpha * (x(0) - kPi) + kPi;
    const double p2 = alpha * (x(1) - kPi) + kPi;
    const double e = std::exp(-(p1 - kPi) * (p1 - kPi) - (p2 - kPi) * (p2 - kPi));
    const double v = -std::cos(p1) * std::cos(p2) * e;
    return vec({alpha * (std::sin(p1) * std::cos(p2) * e - 2 * (p1 - kPi) * v),
                alpha * (std::cos(p1) * std::sin(p2) * e - 2 * (p2 - kPi) * v)});
  };
  return f;
}

BaseFunction polynomial_example() {
  BaseFunction f;
  f.name = "polynomial";
  f.dim = 1;
  f.domain = box(1, -1, 1);
  f.f_star = -1.0;
  f.table_f_star = -1.0;
  f.minimizer = vec({0.0});
  f.value = [](const Vector& x) {
    const double t = x(0);
    if (t < -1.0 || t > 1.0) return 0.0;
    return -t * t * t * t + 2 * t * t - 1;
  };
  f.gradient = [](const Vector& x) {
    const double t = x(0);
    if (t < -1.0 || t > 1.0) return vec({0.0});
    return vec({-4 * t * t * t + 4 * t});
  };
  return f;
}

BaseFunction constant_function(int dim, double c) {
  BaseFunction f;
  f.name = "constant";
  f.dim = dim;
  f.domain = box(dim, -1, 1);
  f.f_star = c;
  f.table_f_star = c;
  f.minimizer = Vector::Zero(dim);
  f.value = [c](const Vector&) { return c; };
  f.gradient = [dim](const Vector&) { return Vector(Vector::Zero(dim)); };
  return f;
}

BaseFunction linear_function(const Vector& c) {
  BaseFunction f;
  f.name = "linear";
  f.dim = static_cast<int>(c.size());
  f.domain = box(f.dim, -1, 1);
  f.minimizer = Vector::Zero(f.dim);
  f.value = [c](const Vector& y) { return c.dot(y); };
  f.gradient = [c](const Vector&) { return c; };
  return f;
}

BaseFunction quadratic_function(int dim) {
  BaseFunction f;
  f.name = "quadratic";
  f.dim = dim;
  f.domain = box(dim, -1, 1);
  f.f_star = 0.0;
  f.table_f_star = 0.0;
  f.minimizer = Vector::Zero(dim);
  f.value = [](const Vector& y) { return y.squaredNorm(); };
  f.gradient = [](const Vector& y) { return Vector(2 * y); };
  return f;
}

std::vector<BaseFunction> benchmark_table() {
  return {beale(),
          branin(),
          brent(),
          camel(),
          goldstein_price(),
          hartmann3(),
          hartmann6(),
          levy(),
          rosenbrock(),
          shekel(5, -10.153199679058229, -10.1532,
                 vec({4.000037152376549, 4.000133278657566, 4.000037151057555, 4.000133277090425})),
          shekel(7, -10.402915336777745, -10.4029,
                 vec({4.000572818167059, 3.9996062070672305, 4.000572821117356, 3.999606210400273})),
          shekel(10, -10.53644315348353, -10.5364,
                 vec({4.000746867869747, 3.9995094850576276, 4.000746868809279, 3.999509480017675})),
          shubert(),
          styblinski_tang(),
          trid(),
          zettl()};
}

std::vector<BaseFunction> catalogue() {
  auto all = benchmark_table();
  all.push_back(alpha_easom(1.0));
  return all;
}

BaseFunction find_function(std::string_view name) {
  const std::string key = normalize(name);
  for (auto& f : catalogue())
    if (f.name == key) return f;
  if (key == "polynomial") return polynomial_example();
  throw std::invalid_argument("unknown function '" + std::string(name) + "'");
}

}  // namespace asgo
