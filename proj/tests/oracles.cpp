#include "oracles.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace oracles {

namespace {

long double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  long double f = 1.0L;
  for (int k = 2; k <= n; ++k) f *= static_cast<long double>(k);
  return f;
}

}  // namespace

long double wigner3j_zero(int j1, int j2, int j3) {
  // Triangle rule and parity: the symbol vanishes unless |j1-j2| <= j3 <=
  // j1+j2 and j1+j2+j3 is even.
  if (j3 < std::abs(j1 - j2) || j3 > j1 + j2) return 0.0L;
  int J = j1 + j2 + j3;
  if (J % 2 != 0) return 0.0L;
  int g = J / 2;
  long double delta = factorial(J - 2 * j1) * factorial(J - 2 * j2) *
                      factorial(J - 2 * j3) / factorial(J + 1);
  long double ratio = factorial(g) / (factorial(g - j1) * factorial(g - j2) *
                                      factorial(g - j3));
  long double sign = (g % 2 == 0) ? 1.0L : -1.0L;
  return sign * sqrtl(delta) * ratio;
}

long double branch_from_3j(int J, int Jf) {
  long double w = wigner3j_zero(J, 2, Jf);
  return static_cast<long double>(2 * Jf + 1) * w * w;
}

std::vector<double> mat_exp_apply(const std::vector<double>& W, int n,
                                  const std::vector<double>& P0, double t) {
  // Scale W t down until its 1-norm is below 1/2, exponentiate by Taylor
  // series, then square the result back up.
  std::vector<long double> A(static_cast<size_t>(n) * n);
  for (size_t i = 0; i < A.size(); ++i) A[i] = static_cast<long double>(W[i]) * t;

  long double norm1 = 0.0L;
  for (int c = 0; c < n; ++c) {
    long double col = 0.0L;
    for (int r = 0; r < n; ++r) col += fabsl(A[static_cast<size_t>(r) * n + c]);
    if (col > norm1) norm1 = col;
  }
  int squarings = 0;
  while (norm1 > 0.5L) {
    norm1 /= 2.0L;
    ++squarings;
  }
  long double scale = powl(2.0L, -static_cast<long double>(squarings));
  for (auto& a : A) a *= scale;

  auto matmul = [n](const std::vector<long double>& X,
                    const std::vector<long double>& Y) {
    std::vector<long double> Z(static_cast<size_t>(n) * n, 0.0L);
    for (int r = 0; r < n; ++r)
      for (int k = 0; k < n; ++k) {
        long double x = X[static_cast<size_t>(r) * n + k];
        if (x == 0.0L) continue;
        for (int c = 0; c < n; ++c)
          Z[static_cast<size_t>(r) * n + c] += x * Y[static_cast<size_t>(k) * n + c];
      }
    return Z;
  };

  // Taylor: E = I + A + A^2/2! + ...
  std::vector<long double> E(static_cast<size_t>(n) * n, 0.0L);
  for (int r = 0; r < n; ++r) E[static_cast<size_t>(r) * n + r] = 1.0L;
  std::vector<long double> term(E);
  for (int k = 1; k <= 40; ++k) {
    term = matmul(term, A);
    for (auto& v : term) v /= static_cast<long double>(k);
    long double tnorm = 0.0L;
    for (size_t i = 0; i < term.size(); ++i) {
      E[i] += term[i];
      tnorm += fabsl(term[i]);
    }
    if (tnorm < 1e-24L) break;
  }
  for (int s = 0; s < squarings; ++s) E = matmul(E, E);

  std::vector<double> out(n, 0.0);
  for (int r = 0; r < n; ++r) {
    long double acc = 0.0L;
    for (int c = 0; c < n; ++c)
      acc += E[static_cast<size_t>(r) * n + c] * static_cast<long double>(P0[c]);
    out[r] = static_cast<double>(acc);
  }
  return out;
}

std::vector<double> stationary_vector(const std::vector<double>& W, int n) {
  // Solve W x = 0 with the normalization row sum(x) = 1 replacing the first
  // equation (the rows of W are linearly dependent by construction).
  std::vector<long double> M(static_cast<size_t>(n) * (n + 1), 0.0L);
  for (int c = 0; c < n; ++c) M[c] = 1.0L;
  M[n] = 1.0L;  // sum x = 1
  for (int r = 1; r < n; ++r) {
    for (int c = 0; c < n; ++c)
      M[static_cast<size_t>(r) * (n + 1) + c] =
          static_cast<long double>(W[static_cast<size_t>(r) * n + c]);
    M[static_cast<size_t>(r) * (n + 1) + n] = 0.0L;
  }
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (fabsl(M[static_cast<size_t>(r) * (n + 1) + col]) >
          fabsl(M[static_cast<size_t>(pivot) * (n + 1) + col]))
        pivot = r;
    if (pivot != col)
      for (int c = 0; c <= n; ++c)
        std::swap(M[static_cast<size_t>(col) * (n + 1) + c],
                  M[static_cast<size_t>(pivot) * (n + 1) + c]);
    long double diag = M[static_cast<size_t>(col) * (n + 1) + col];
    if (fabsl(diag) < 1e-30L)
      throw std::runtime_error("stationary_vector: singular system");
    for (int r = col + 1; r < n; ++r) {
      long double f = M[static_cast<size_t>(r) * (n + 1) + col] / diag;
      for (int c = col; c <= n; ++c)
        M[static_cast<size_t>(r) * (n + 1) + c] -=
            f * M[static_cast<size_t>(col) * (n + 1) + c];
    }
  }
  std::vector<long double> x(n, 0.0L);
  for (int r = n - 1; r >= 0; --r) {
    long double acc = M[static_cast<size_t>(r) * (n + 1) + n];
    for (int c = r + 1; c < n; ++c)
      acc -= M[static_cast<size_t>(r) * (n + 1) + c] * x[c];
    x[r] = acc / M[static_cast<size_t>(r) * (n + 1) + r];
  }
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = static_cast<double>(x[i]);
  return out;
}

std::vector<double> thermal_rot_populations(double B_cm, double D_cm,
                                            double temperature_K, int J_max) {
  // Boltzmann weights in long double; hc/kB in cm*K is derived from the same
  // CODATA values the production code uses, but composed independently.
  const long double h = 6.62607015e-34L;
  const long double c = 299792458.0L;
  const long double kB = 1.380649e-23L;
  const long double cm_to_joule = h * c * 100.0L;
  std::vector<long double> w(J_max + 1);
  long double z = 0.0L;
  for (int J = 0; J <= J_max; ++J) {
    long double jj = static_cast<long double>(J) * (J + 1);
    long double e_cm = static_cast<long double>(B_cm) * jj -
                       static_cast<long double>(D_cm) * jj * jj;
    long double boltz =
        temperature_K > 0.0
            ? expl(-e_cm * cm_to_joule / (kB * static_cast<long double>(temperature_K)))
            : (J == 0 ? 1.0L : 0.0L);
    w[J] = static_cast<long double>(2 * J + 1) * boltz;
    z += w[J];
  }
  std::vector<double> out(J_max + 1);
  for (int J = 0; J <= J_max; ++J) out[J] = static_cast<double>(w[J] / z);
  return out;
}

}  // namespace oracles
