#pragma once

// Closed-form upper bounds for normalized eigenvalues on homogeneous spaces
// and the genus bound for surfaces.

#include <string>
#include <vector>

namespace confspec {

// omega_m = 2 pi^{(m+1)/2} / Gamma((m+1)/2), the volume of the unit S^m.
double sphere_volume(int m);

// Complete elliptic integral of the second kind in the modulus convention
// E(k) = int_0^{pi/2} sqrt(1 - k^2 sin^2 theta) dtheta, by the AGM.
// Throws Error(kModulusOutOfRange) unless 0 <= k < 1.
double elliptic_E(double k);

struct TableParams {
  // S^m and RP^m
  int m = 2;
  // CP^d and HP^d
  int d = 1;
  // S^p x S^q
  int p = 1;
  int q = 1;
};

struct TableRow {
  std::string name;
  int m = 0;
  double lambda1_bar_bound = 0.0;
  // Always 2^{2/m} * lambda1_bar_bound.
  double lambda2_bar_bound = 0.0;
  std::string lambda1_formula;
  std::string lambda2_formula;
};

// Row keys, in table order.
const std::vector<std::string>& table_row_keys();

// key is one of table_row_keys(). Throws Error(kUnknownRow) otherwise and
// Error(kPreconditionViolation) for out-of-range parameters.
TableRow table_row(const std::string& key, const TableParams& params = {});

std::vector<TableRow> table_rows(const TableParams& params = {});

// k * 8 pi floor((genus + 3) / 2), k in {1, 2}.
double genus_bound(int genus, int k);

}  // namespace confspec
