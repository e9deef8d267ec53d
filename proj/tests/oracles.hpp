// Test-only reference implementations ("oracles"). These are deliberately
// written with different algorithms than the production code so that
// agreement is meaningful:
//   - rotational branch coefficients from Wigner 3-j symbols (factorial form)
//   - matrix exponential by scaling-and-squaring Taylor series
//   - stationary vector by direct linear solve
//   - thermal populations by long-double direct summation
// They are frozen first and the production modules are written against them.

#pragma once

#include <vector>

namespace oracles {

// Wigner 3-j symbol with all projections zero, (j1 j2 j3; 0 0 0),
// evaluated with the closed factorial formula in long double.
long double wigner3j_zero(int j1, int j2, int j3);

// Rotational Raman branch coefficient via the 3-j route:
// b(J -> Jf) = (2 Jf + 1) * [3j(J, 2, Jf; 0, 0, 0)]^2.
long double branch_from_3j(int J, int Jf);

// P(t) = exp(W t) P0 for a dense n x n matrix W stored row-major
// (W[r*n + c] = rate c -> r), by scaling-and-squaring Taylor series.
std::vector<double> mat_exp_apply(const std::vector<double>& W, int n,
                                  const std::vector<double>& P0, double t);

// Normalized stationary vector of W (W x = 0, sum x = 1) by Gaussian
// elimination with partial pivoting.
std::vector<double> stationary_vector(const std::vector<double>& W, int n);

// Thermal rotational populations for energy E(J) = B J(J+1) - D J^2 (J+1)^2
// (inputs in 1/cm), degeneracy 2J+1, by long-double direct summation.
std::vector<double> thermal_rot_populations(double B_cm, double D_cm,
                                            double temperature_K, int J_max);

}  // namespace oracles
