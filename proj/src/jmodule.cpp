#include "rank1/jmodule.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace rank1 {

ModuleVector::ModuleVector(Field f, std::vector<Scalar> entries) : field(f), e(std::move(entries)) {
  for (auto& s : e)
    if (s.field != f) throw FieldMismatch("vector entry field differs from vector field");
}

ModuleVector ModuleVector::zero(Field f, int len) {
  return ModuleVector(f, std::vector<Scalar>(static_cast<std::size_t>(len), Scalar::zero(f)));
}

double ModuleVector::norm2() const {
  double s = 0.0;
  for (const auto& x : e) s += x.norm2();
  return s;
}

bool ModuleVector::is_zero(double tol) const { return std::sqrt(norm2()) <= tol; }

void require_compatible(const ModuleVector& v, const ModuleVector& u, const char* op) {
  if (v.field != u.field)
    throw FieldMismatch(std::string(op) + ": vectors over different fields");
  if (v.size() != u.size())
    throw DimensionMismatch(std::string(op) + ": vector lengths " + std::to_string(v.size()) +
                            " and " + std::to_string(u.size()));
}

ModuleVector operator+(const ModuleVector& v, const ModuleVector& u) {
  require_compatible(v, u, "vector add");
  ModuleVector r = v;
  for (int i = 0; i < v.size(); ++i) r.e[i] = r.e[i] + u.e[i];
  return r;
}

ModuleVector operator-(const ModuleVector& v, const ModuleVector& u) {
  require_compatible(v, u, "vector sub");
  ModuleVector r = v;
  for (int i = 0; i < v.size(); ++i) r.e[i] = r.e[i] - u.e[i];
  return r;
}

ModuleVector operator-(const ModuleVector& v) {
  ModuleVector r = v;
  for (auto& x : r.e) x = -x;
  return r;
}

ModuleVector operator*(double a, const ModuleVector& v) {
  ModuleVector r = v;
  for (auto& x : r.e) x = a * x;
  return r;
}

ModuleVector operator*(const Scalar& zeta, const ModuleVector& v) {
  if (zeta.field != v.field) throw FieldMismatch("scalar action: field mismatch");
  ModuleVector r = v;
  for (auto& x : r.e) x = zeta * x;
  return r;
}

double euclid_inner(const ModuleVector& v, const ModuleVector& u) {
  require_compatible(v, u, "inner");
  double s = 0.0;
  for (int i = 0; i < v.size(); ++i)
    for (int k = 0; k < 4; ++k) s += v.e[i].c[k] * u.e[i].c[k];
  return s;
}

Scalar beta1(const Scalar& x, const Scalar& y) {
  require_same_field(x, y, "beta1");
  return x * conj(y);
}

Scalar beta2(const ModuleVector& v, const ModuleVector& u) {
  require_compatible(v, u, "beta2");
  Scalar s = Scalar::zero(v.field);
  for (int i = 0; i < v.size(); ++i) s = s + v.e[i] * conj(u.e[i]);
  return s;
}

WPair operator+(const WPair& a, const WPair& b) { return WPair(a.zeta + b.zeta, a.v + b.v); }
WPair operator-(const WPair& a, const WPair& b) { return WPair(a.zeta - b.zeta, a.v - b.v); }
WPair operator*(double a, const WPair& w) { return WPair(a * w.zeta, a * w.v); }
WPair operator*(const Scalar& zeta, const WPair& w) { return WPair(zeta * w.zeta, zeta * w.v); }

double euclid_inner(const WPair& a, const WPair& b) {
  double s = 0.0;
  for (int k = 0; k < 4; ++k) s += a.zeta.c[k] * b.zeta.c[k];
  return s + euclid_inner(a.v, b.v);
}

Scalar beta3(const WPair& a, const WPair& b) { return beta1(a.zeta, b.zeta) + beta2(a.v, b.v); }

Scalar lie_bracket(const ModuleVector& x, const ModuleVector& y) {
  require_compatible(x, y, "bracket");
  return im(beta2(y, x));
}

// --------------------------- real matrix helpers ---------------------------

namespace {

using Mat = std::vector<double>;  // row-major square

Mat identity(int d) {
  Mat m(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i) * d + i] = 1.0;
  return m;
}

std::vector<double> matvec(const Mat& m, const std::vector<double>& x) {
  const int d = static_cast<int>(x.size());
  std::vector<double> y(x.size(), 0.0);
  for (int i = 0; i < d; ++i) {
    double s = 0.0;
    for (int j = 0; j < d; ++j) s += m[static_cast<std::size_t>(i) * d + j] * x[j];
    y[i] = s;
  }
  return y;
}

Mat matmul(const Mat& a, const Mat& b, int d) {
  Mat r(static_cast<std::size_t>(d) * d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      const double aik = a[static_cast<std::size_t>(i) * d + k];
      if (aik == 0.0) continue;
      for (int j = 0; j < d; ++j)
        r[static_cast<std::size_t>(i) * d + j] += aik * b[static_cast<std::size_t>(k) * d + j];
    }
  return r;
}

Mat transpose(const Mat& a, int d) {
  Mat r(a.size());
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      r[static_cast<std::size_t>(j) * d + i] = a[static_cast<std::size_t>(i) * d + j];
  return r;
}

double max_abs_diff(const Mat& a, const Mat& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

double vnorm(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// Solves min ||A c - b|| by normal equations; A given column-wise.
// Returns residual norm; c receives the minimizer.
double least_squares(const std::vector<std::vector<double>>& cols, const std::vector<double>& b,
                     std::vector<double>& c) {
  const int k = static_cast<int>(cols.size());
  c.assign(static_cast<std::size_t>(k), 0.0);
  if (k == 0) return vnorm(b);
  std::vector<double> g(static_cast<std::size_t>(k) * k, 0.0), rhs(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (std::size_t t = 0; t < b.size(); ++t) s += cols[i][t] * cols[j][t];
      g[static_cast<std::size_t>(i) * k + j] = s;
    }
    double s = 0.0;
    for (std::size_t t = 0; t < b.size(); ++t) s += cols[i][t] * b[t];
    rhs[static_cast<std::size_t>(i)] = s;
  }
  // Gaussian elimination with partial pivoting; singular systems fall back to
  // the zero component (minimum-norm-ish, adequate for residual testing).
  std::vector<int> piv(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) piv[static_cast<std::size_t>(i)] = i;
  for (int col = 0; col < k; ++col) {
    int best = col;
    for (int r = col + 1; r < k; ++r)
      if (std::fabs(g[static_cast<std::size_t>(r) * k + col]) >
          std::fabs(g[static_cast<std::size_t>(best) * k + col]))
        best = r;
    if (best != col) {
      for (int j = 0; j < k; ++j)
        std::swap(g[static_cast<std::size_t>(col) * k + j], g[static_cast<std::size_t>(best) * k + j]);
      std::swap(rhs[static_cast<std::size_t>(col)], rhs[static_cast<std::size_t>(best)]);
    }
    const double p = g[static_cast<std::size_t>(col) * k + col];
    if (std::fabs(p) < 1e-14) continue;
    for (int r = col + 1; r < k; ++r) {
      const double f = g[static_cast<std::size_t>(r) * k + col] / p;
      if (f == 0.0) continue;
      for (int j = col; j < k; ++j)
        g[static_cast<std::size_t>(r) * k + j] -= f * g[static_cast<std::size_t>(col) * k + j];
      rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
    }
  }
  for (int r = k - 1; r >= 0; --r) {
    double s = rhs[static_cast<std::size_t>(r)];
    for (int j = r + 1; j < k; ++j) s -= g[static_cast<std::size_t>(r) * k + j] * c[static_cast<std::size_t>(j)];
    const double p = g[static_cast<std::size_t>(r) * k + r];
    c[static_cast<std::size_t>(r)] = (std::fabs(p) < 1e-14) ? 0.0 : s / p;
  }
  std::vector<double> res = b;
  for (int i = 0; i < k; ++i)
    for (std::size_t t = 0; t < b.size(); ++t) res[t] -= c[static_cast<std::size_t>(i)] * cols[i][t];
  return vnorm(res);
}

std::vector<double> random_unit_vector(std::mt19937_64& rng, int d) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(d));
  double n = 0.0;
  while (n < 1e-6) {
    for (auto& v : x) v = gauss(rng);
    n = vnorm(x);
  }
  for (auto& v : x) v /= n;
  return x;
}

}  // namespace

// ------------------------------- HTypeData ---------------------------------

void HTypeData::validate_shape() const {
  if (dim_z < 0 || dim_v < 0) throw DimensionMismatch("negative dimension");
  if (static_cast<int>(J.size()) != dim_z)
    throw DimensionMismatch("expected " + std::to_string(dim_z) + " structure matrices, got " +
                            std::to_string(J.size()));
  for (const auto& m : J)
    if (static_cast<int>(m.size()) != dim_v * dim_v)
      throw DimensionMismatch("structure matrix is not dim_v x dim_v");
}

HTypeReport check_h_type(const HTypeData& data, std::uint64_t seed, double tol_h2, double tol_h3) {
  data.validate_shape();
  HTypeReport rep;
  const int dz = data.dim_z, dv = data.dim_v;

  // Skew-symmetry of each basis map (antisymmetry of the induced bracket).
  for (int k = 0; k < dz && rep.h1.pass; ++k)
    for (int i = 0; i < dv && rep.h1.pass; ++i)
      for (int j = 0; j < dv; ++j) {
        const double s = data.J[static_cast<std::size_t>(k)][static_cast<std::size_t>(i) * dv + j] +
                         data.J[static_cast<std::size_t>(k)][static_cast<std::size_t>(j) * dv + i];
        if (std::fabs(s) > tol_h2) {
          std::ostringstream os;
          os << "J_" << k << " not skew at (" << i << "," << j << "), defect " << s;
          rep.h1 = {false, os.str()};
          break;
        }
      }

  // Norm identity: J_i^T J_j + J_j^T J_i = 2 delta_ij I, checked entrywise,
  // plus random samples of |J_Z X| - |Z||X|.
  if (dz > 0 && dv > 0) {
    for (int i = 0; i < dz && rep.h2.pass; ++i)
      for (int j = i; j < dz && rep.h2.pass; ++j) {
        Mat s = matmul(transpose(data.J[static_cast<std::size_t>(i)], dv),
                       data.J[static_cast<std::size_t>(j)], dv);
        Mat t = matmul(transpose(data.J[static_cast<std::size_t>(j)], dv),
                       data.J[static_cast<std::size_t>(i)], dv);
        for (std::size_t p = 0; p < s.size(); ++p) s[p] += t[p];
        Mat want = identity(dv);
        for (auto& w : want) w *= (i == j) ? 2.0 : 0.0;
        const double d = max_abs_diff(s, want);
        if (d > tol_h2) {
          std::ostringstream os;
          os << "norm identity fails for basis pair (" << i << "," << j << "), defect " << d;
          rep.h2 = {false, os.str()};
        }
      }
    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < 64 && rep.h2.pass; ++trial) {
      auto z = random_unit_vector(rng, dz);
      auto x = random_unit_vector(rng, dv);
      std::vector<double> jx(static_cast<std::size_t>(dv), 0.0);
      for (int k = 0; k < dz; ++k) {
        auto col = matvec(data.J[static_cast<std::size_t>(k)], x);
        for (int t = 0; t < dv; ++t) jx[static_cast<std::size_t>(t)] += z[static_cast<std::size_t>(k)] * col[static_cast<std::size_t>(t)];
      }
      const double d = std::fabs(vnorm(jx) - 1.0);
      if (d > tol_h2) {
        std::ostringstream os;
        os << "|J_Z X| != |Z||X| on sample " << trial << ", defect " << d;
        rep.h2 = {false, os.str()};
      }
    }
  }

  // Closure: for orthogonal Z1, Z2 and sampled X, J_{Z1} J_{Z2} X lies in
  // span{J_k X}.  Vacuous for abelian data.
  if (dz >= 2 && dv > 0) {
    std::mt19937_64 rng(seed + 1);
    for (int i = 0; i < dz && rep.h3.pass; ++i)
      for (int j = 0; j < dz && rep.h3.pass; ++j) {
        if (i == j) continue;  // basis vectors are orthogonal iff distinct
        for (int trial = 0; trial < 8 && rep.h3.pass; ++trial) {
          auto x = random_unit_vector(rng, dv);
          auto jjx = matvec(data.J[static_cast<std::size_t>(i)],
                            matvec(data.J[static_cast<std::size_t>(j)], x));
          std::vector<std::vector<double>> cols;
          cols.reserve(static_cast<std::size_t>(dz));
          for (int k = 0; k < dz; ++k) cols.push_back(matvec(data.J[static_cast<std::size_t>(k)], x));
          std::vector<double> coeff;
          const double res = least_squares(cols, jjx, coeff);
          if (res > tol_h3) {
            std::ostringstream os;
            os << "closure fails for (Z_" << i << ", Z_" << j << "), residual " << res;
            rep.h3 = {false, os.str()};
          }
        }
      }
  }
  return rep;
}

void GenericModule::validate_shape() const {
  if (dim_c < 1 || dim_v < 0) throw DimensionMismatch("bad module dimensions");
  if (static_cast<int>(Jt.size()) != dim_c)
    throw DimensionMismatch("expected " + std::to_string(dim_c) + " action matrices");
  for (const auto& m : Jt)
    if (static_cast<int>(m.size()) != dim_v * dim_v)
      throw DimensionMismatch("action matrix is not dim_v x dim_v");
}

ModuleReport check_module(const GenericModule& m, std::uint64_t seed, double tol_m2, double tol_m3) {
  m.validate_shape();
  ModuleReport rep;
  if (m.dim_v > 0) {
    const double d = max_abs_diff(m.Jt[0], identity(m.dim_v));
    if (d > tol_m2) rep.m1 = {false, "unit does not act as identity, defect " + std::to_string(d)};
  }
  HTypeData h;
  h.dim_z = m.dim_c - 1;
  h.dim_v = m.dim_v;
  h.J.assign(m.Jt.begin() + 1, m.Jt.end());
  HTypeReport hr = check_h_type(h, seed, tol_m2, tol_m3);
  // Skewness of the imaginary actions and the norm identity together are the
  // polarized form of the module norm axiom once the unit acts as identity.
  if (!hr.h1.pass) rep.m2 = hr.h1;
  else if (!hr.h2.pass) rep.m2 = hr.h2;
  rep.m3 = hr.h3;
  return rep;
}

GenericModule module_from_h_type(const HTypeData& data) {
  HTypeReport rep = check_h_type(data);
  if (!rep.all()) {
    const AxiomWitness& w = !rep.h1.pass ? rep.h1 : (!rep.h2.pass ? rep.h2 : rep.h3);
    throw AxiomFailure("structure axioms fail: " + w.detail);
  }
  GenericModule m;
  m.dim_c = data.dim_z + 1;
  m.dim_v = data.dim_v;
  m.Jt.reserve(static_cast<std::size_t>(m.dim_c));
  m.Jt.push_back(identity(data.dim_v));
  for (const auto& j : data.J) m.Jt.push_back(j);
  return m;
}

HTypeData h_type_from_module(const GenericModule& m) {
  ModuleReport rep = check_module(m);
  if (!rep.all()) {
    const AxiomWitness& w = !rep.m1.pass ? rep.m1 : (!rep.m2.pass ? rep.m2 : rep.m3);
    throw AxiomFailure("module axioms fail: " + w.detail);
  }
  HTypeData h;
  h.dim_z = m.dim_c - 1;
  h.dim_v = m.dim_v;
  h.J.assign(m.Jt.begin() + 1, m.Jt.end());
  return h;
}

HTypeData classical_h_type(Field f, int n) {
  if (n < 2) throw DimensionMismatch("need n >= 2");
  const int d = field_dim(f);
  HTypeData data;
  data.dim_z = d - 1;
  data.dim_v = (n - 1) * d;
  for (int k = 1; k < d; ++k) {
    Mat m(static_cast<std::size_t>(data.dim_v) * data.dim_v, 0.0);
    const Scalar q = Scalar::unit(f, k);
    // Left multiplication by the k-th imaginary unit, block diagonal over the
    // n-1 coordinates of V.
    for (int blk = 0; blk < n - 1; ++blk)
      for (int col = 0; col < d; ++col) {
        const Scalar img = q * Scalar::unit(f, col);
        for (int row = 0; row < d; ++row)
          m[static_cast<std::size_t>(blk * d + row) * data.dim_v + (blk * d + col)] = img.c[static_cast<std::size_t>(row)];
      }
    data.J.push_back(std::move(m));
  }
  return data;
}

// ---------------------------- automorphism pairs ---------------------------

namespace {

std::vector<double> scalar_coords(const Scalar& s, int d) {
  std::vector<double> x(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) x[static_cast<std::size_t>(k)] = s.c[static_cast<std::size_t>(k)];
  return x;
}

Scalar scalar_from_coords(Field f, const std::vector<double>& x) {
  Scalar s(f, 0.0);
  for (int k = 0; k < field_dim(f) && k < static_cast<int>(x.size()); ++k)
    s.c[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k)];
  return s;
}

std::vector<double> vector_coords(const ModuleVector& v) {
  const int d = field_dim(v.field);
  std::vector<double> x(static_cast<std::size_t>(v.size()) * d);
  for (int i = 0; i < v.size(); ++i)
    for (int k = 0; k < d; ++k) x[static_cast<std::size_t>(i * d + k)] = v.e[static_cast<std::size_t>(i)].c[static_cast<std::size_t>(k)];
  return x;
}

ModuleVector vector_from_coords(Field f, const std::vector<double>& x) {
  const int d = field_dim(f);
  const int len = static_cast<int>(x.size()) / d;
  ModuleVector v = ModuleVector::zero(f, len);
  for (int i = 0; i < len; ++i)
    for (int k = 0; k < d; ++k) v.e[static_cast<std::size_t>(i)].c[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(i * d + k)];
  return v;
}

ModuleVector random_vector(std::mt19937_64& rng, Field f, int len) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ModuleVector v = ModuleVector::zero(f, len);
  for (auto& s : v.e)
    for (int k = 0; k < field_dim(f); ++k) s.c[static_cast<std::size_t>(k)] = gauss(rng);
  return v;
}

Scalar random_scalar(std::mt19937_64& rng, Field f) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Scalar s(f, 0.0);
  for (int k = 0; k < field_dim(f); ++k) s.c[static_cast<std::size_t>(k)] = gauss(rng);
  return s;
}

}  // namespace

Scalar apply_phi(const AutomorphismPair& a, const Scalar& zeta) {
  if (zeta.field != a.field) throw FieldMismatch("apply_phi");
  return scalar_from_coords(a.field, matvec(a.phi, scalar_coords(zeta, field_dim(a.field))));
}

ModuleVector apply_psi(const AutomorphismPair& a, const ModuleVector& v) {
  if (v.field != a.field) throw FieldMismatch("apply_psi");
  return vector_from_coords(a.field, matvec(a.psi, vector_coords(v)));
}

AutomorphismReport check_automorphism(const AutomorphismPair& a, std::uint64_t seed, double tol) {
  const int d = field_dim(a.field);
  const int dv = (a.n - 1) * d;
  if (static_cast<int>(a.phi.size()) != d * d || static_cast<int>(a.psi.size()) != dv * dv)
    throw DimensionMismatch("automorphism matrices have wrong shape");
  AutomorphismReport rep;

  const double dphi = max_abs_diff(matmul(transpose(a.phi, d), a.phi, d), identity(d));
  const double dpsi = max_abs_diff(matmul(transpose(a.psi, dv), a.psi, dv), identity(dv));
  if (dphi > tol || dpsi > tol)
    rep.orthogonal = {false, "orthogonality defect " + std::to_string(std::max(dphi, dpsi))};

  const Scalar e1 = apply_phi(a, Scalar::one(a.field));
  if (abs(e1 - Scalar::one(a.field)) > tol)
    rep.fixes_unit = {false, "phi(1) differs from 1 by " + std::to_string(abs(e1 - Scalar::one(a.field)))};

  std::mt19937_64 rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const Scalar zeta = random_scalar(rng, a.field);
    const ModuleVector v = random_vector(rng, a.field, a.n - 1);
    const ModuleVector lhs = apply_phi(a, zeta) * apply_psi(a, v);
    const ModuleVector rhs = apply_psi(a, zeta * v);
    worst = std::max(worst, std::sqrt((lhs - rhs).norm2()));
  }
  if (worst > tol * 100)
    rep.intertwines = {false, "scalar action not intertwined, defect " + std::to_string(worst)};
  return rep;
}

}  // namespace rank1
