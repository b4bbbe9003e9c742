#include "confspec/bound_tables.hpp"

#include <cmath>
#include <numbers>

#include "confspec/error.hpp"

namespace confspec {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) { return std::tgamma(static_cast<double>(n) + 1.0); }

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kPreconditionViolation, what);
}

TableRow make_row(std::string name, int m, double lambda1, std::string f1, std::string f2) {
  TableRow row;
  row.name = std::move(name);
  row.m = m;
  row.lambda1_bar_bound = lambda1;
  row.lambda2_bar_bound = std::pow(2.0, 2.0 / m) * lambda1;
  row.lambda1_formula = std::move(f1);
  row.lambda2_formula = std::move(f2);
  return row;
}

}  // namespace

double sphere_volume(int m) {
  require(m >= 1, "sphere dimension must be at least 1");
  const double h = 0.5 * (m + 1);
  return 2.0 * std::pow(kPi, h) / std::tgamma(h);
}

double elliptic_E(double k) {
  if (!(k >= 0.0 && k < 1.0)) {
    throw Error(ErrorCode::kModulusOutOfRange, "elliptic modulus must lie in [0, 1)");
  }
  double a = 1.0;
  double b = std::sqrt(1.0 - k * k);
  double c = k;
  double sum = 0.5 * c * c;
  double weight = 0.5;
  for (int i = 0; i < 64 && std::abs(c) > 1e-17 * a; ++i) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    weight *= 2.0;
    sum += weight * c * c;
  }
  return kPi / (2.0 * a) * (1.0 - sum);
}

const std::vector<std::string>& table_row_keys() {
  static const std::vector<std::string> keys = {"S^m", "RP^m", "CP^d", "HP^d", "OP^2", "S^pxS^q", "T_eq", "K"};
  return keys;
}

TableRow table_row(const std::string& key, const TableParams& params) {
  if (key == "S^m") {
    const int m = params.m;
    require(m >= 1, "m must be at least 1");
    return make_row("S^" + std::to_string(m), m, m * std::pow(sphere_volume(m), 2.0 / m),
                    "m omega_m^(2/m)", "m (2 omega_m)^(2/m)");
  }
  if (key == "RP^m") {
    const int m = params.m;
    require(m >= 1, "m must be at least 1");
    return make_row("RP^" + std::to_string(m), m, 2.0 * (m + 1) * std::pow(0.5 * sphere_volume(m), 2.0 / m),
                    "2 (m+1) (omega_m / 2)^(2/m)", "2 (m+1) omega_m^(2/m)");
  }
  if (key == "CP^d") {
    const int d = params.d;
    require(d >= 1, "d must be at least 1");
    return make_row("CP^" + std::to_string(d), 2 * d, 4.0 * kPi * (d + 1) / std::pow(factorial(d), 1.0 / d),
                    "4 pi (d+1) / d!^(1/d)", "2^(1/d) 4 pi (d+1) / d!^(1/d)");
  }
  if (key == "HP^d") {
    const int d = params.d;
    require(d >= 1, "d must be at least 1");
    return make_row("HP^" + std::to_string(d), 4 * d,
                    8.0 * kPi * (d + 1) / std::pow(factorial(2 * d + 1), 1.0 / (2 * d)),
                    "8 pi (d+1) / (2d+1)!^(1/(2d))", "2^(1/(2d)) 8 pi (d+1) / (2d+1)!^(1/(2d))");
  }
  if (key == "OP^2") {
    return make_row("OP^2", 16, 48.0 * kPi * std::pow(6.0 / factorial(11), 1.0 / 8.0),
                    "48 pi (6 / 11!)^(1/8)", "48 pi (12 / 11!)^(1/8)");
  }
  if (key == "S^pxS^q") {
    const int p = params.p;
    const int q = params.q;
    require(p >= 1 && q >= 1, "p and q must be at least 1");
    const int m = p + q;
    const double lead = std::pow(std::pow(p, p) * std::pow(q, q), 1.0 / m);
    return make_row("S^" + std::to_string(p) + "xS^" + std::to_string(q), m,
                    lead * std::pow(sphere_volume(p) * sphere_volume(q), 2.0 / m),
                    "(p^p q^q)^(1/(p+q)) (omega_p omega_q)^(2/(p+q))",
                    "(p^p q^q)^(1/(p+q)) (2 omega_p omega_q)^(2/(p+q))");
  }
  if (key == "T_eq") {
    return make_row("T_eq", 2, 8.0 * kPi * kPi * std::sqrt(3.0) / 3.0, "8 pi^2 sqrt(3) / 3",
                    "16 pi^2 sqrt(3) / 3");
  }
  if (key == "K") {
    return make_row("K", 2, 12.0 * kPi * elliptic_E(2.0 * std::sqrt(2.0) / 3.0), "12 pi E(2 sqrt(2) / 3)",
                    "24 pi E(2 sqrt(2) / 3)");
  }
  throw Error(ErrorCode::kUnknownRow, "no table row named '" + key + "'");
}

std::vector<TableRow> table_rows(const TableParams& params) {
  std::vector<TableRow> rows;
  for (const auto& key : table_row_keys()) rows.push_back(table_row(key, params));
  return rows;
}

double genus_bound(int genus, int k) {
  require(genus >= 0, "genus must be non-negative");
  require(k == 1 || k == 2, "k must be 1 or 2");
  return k * 8.0 * kPi * ((genus + 3) / 2);
}

}  // namespace confspec
