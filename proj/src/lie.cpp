#include "cakit/lie.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

#include "cakit/padic.hpp" // pow_u64, is_prime_u64, max_rel_digits

namespace cakit {

// ---------------- generic linear algebra over a NumberField ----------------

namespace {

using FRow = std::vector<NumberField::Elem>;

struct FRref {
  int rank = 0;
  std::vector<int> pivot_cols;
};

FRref field_rref(std::vector<FRow>& m, const NumberField& F) {
  FRref res;
  if (m.empty()) return res;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int col = 0; col < cols && r < rows; ++col) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (!F.is_zero(m[static_cast<size_t>(i)][static_cast<size_t>(col)])) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[static_cast<size_t>(piv)], m[static_cast<size_t>(r)]);
    NumberField::Elem pinv = F.inv(m[static_cast<size_t>(r)][static_cast<size_t>(col)]);
    for (int j = 0; j < cols; ++j)
      m[static_cast<size_t>(r)][static_cast<size_t>(j)] = F.mul(m[static_cast<size_t>(r)][static_cast<size_t>(j)], pinv);
    for (int i = 0; i < rows; ++i) {
      if (i == r) continue;
      const NumberField::Elem& x = m[static_cast<size_t>(i)][static_cast<size_t>(col)];
      if (F.is_zero(x)) continue;
      NumberField::Elem fct = x;
      for (int j = 0; j < cols; ++j)
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] =
            F.sub(m[static_cast<size_t>(i)][static_cast<size_t>(j)],
                  F.mul(fct, m[static_cast<size_t>(r)][static_cast<size_t>(j)]));
    }
    res.pivot_cols.push_back(col);
    ++r;
  }
  res.rank = r;
  return res;
}

std::vector<FRow> field_kernel(std::vector<FRow> m, const NumberField& F) {
  if (m.empty()) return {};
  int cols = static_cast<int>(m[0].size());
  FRref rr = field_rref(m, F);
  std::vector<bool> is_pivot(static_cast<size_t>(cols), false);
  for (int c : rr.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<FRow> basis;
  for (int fc = 0; fc < cols; ++fc) {
    if (is_pivot[static_cast<size_t>(fc)]) continue;
    FRow v(static_cast<size_t>(cols), F.zero());
    v[static_cast<size_t>(fc)] = F.one();
    for (int i = 0; i < rr.rank; ++i)
      v[static_cast<size_t>(rr.pivot_cols[static_cast<size_t>(i)])] =
          F.neg(m[static_cast<size_t>(i)][static_cast<size_t>(fc)]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve A x = b where A's columns are the given vectors; returns false when
// inconsistent.
bool field_solve_cols(const std::vector<FRow>& colvecs, const FRow& b, const NumberField& F,
                      std::vector<NumberField::Elem>& x) {
  size_t rows = b.size();
  size_t cols = colvecs.size();
  std::vector<FRow> aug(rows, FRow(cols + 1, F.zero()));
  for (size_t j = 0; j < cols; ++j)
    for (size_t i = 0; i < rows; ++i) aug[i][j] = colvecs[j][i];
  for (size_t i = 0; i < rows; ++i) aug[i][cols] = b[i];
  FRref rr = field_rref(aug, F);
  x.assign(cols, F.zero());
  for (int i = 0; i < rr.rank; ++i) {
    int pc = rr.pivot_cols[static_cast<size_t>(i)];
    if (pc == static_cast<int>(cols)) return false;
    x[static_cast<size_t>(pc)] = aug[static_cast<size_t>(i)][cols];
  }
  return true;
}

} // namespace

// ---------------- StructureLieAlgebra ----------------

StructureLieAlgebra::StructureLieAlgebra(std::shared_ptr<const NumberField> base, int dim, std::string name)
    : base_(std::move(base)), dim_(dim), name_(std::move(name)),
      c_(static_cast<size_t>(dim) * dim * dim, base_->zero()) {
  if (dim < 1) throw std::domain_error("dimension must be >= 1");
}

void StructureLieAlgebra::set_bracket(int i, int j, const LieVec& value) {
  if (static_cast<int>(value.size()) != dim_) throw std::domain_error("bracket value has wrong dimension");
  for (int k = 0; k < dim_; ++k) {
    c_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k] = value[static_cast<size_t>(k)];
    c_[(static_cast<size_t>(j) * dim_ + i) * dim_ + k] = base_->neg(value[static_cast<size_t>(k)]);
  }
}

const NumberField::Elem& StructureLieAlgebra::c(int i, int j, int k) const {
  return c_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k];
}

LieVec StructureLieAlgebra::zero_vec() const { return LieVec(static_cast<size_t>(dim_), base_->zero()); }

LieVec StructureLieAlgebra::basis_vec(int i) const {
  LieVec v = zero_vec();
  v[static_cast<size_t>(i)] = base_->one();
  return v;
}

LieVec StructureLieAlgebra::add(const LieVec& a, const LieVec& b) const {
  LieVec r = a;
  for (int i = 0; i < dim_; ++i) r[static_cast<size_t>(i)] = base_->add(r[static_cast<size_t>(i)], b[static_cast<size_t>(i)]);
  return r;
}

LieVec StructureLieAlgebra::sub(const LieVec& a, const LieVec& b) const {
  LieVec r = a;
  for (int i = 0; i < dim_; ++i) r[static_cast<size_t>(i)] = base_->sub(r[static_cast<size_t>(i)], b[static_cast<size_t>(i)]);
  return r;
}

LieVec StructureLieAlgebra::scale(const LieVec& a, const NumberField::Elem& s) const {
  LieVec r = a;
  for (auto& x : r) x = base_->mul(x, s);
  return r;
}

bool StructureLieAlgebra::vec_is_zero(const LieVec& a) const {
  for (const auto& x : a)
    if (!base_->is_zero(x)) return false;
  return true;
}

bool StructureLieAlgebra::vec_eq(const LieVec& a, const LieVec& b) const { return vec_is_zero(sub(a, b)); }

LieVec StructureLieAlgebra::bracket(const LieVec& x, const LieVec& y) const {
  if (static_cast<int>(x.size()) != dim_ || static_cast<int>(y.size()) != dim_)
    throw std::domain_error("bracket: dimension mismatch");
  LieVec r = zero_vec();
  for (int i = 0; i < dim_; ++i) {
    if (base_->is_zero(x[static_cast<size_t>(i)])) continue;
    for (int j = 0; j < dim_; ++j) {
      if (base_->is_zero(y[static_cast<size_t>(j)])) continue;
      NumberField::Elem xy = base_->mul(x[static_cast<size_t>(i)], y[static_cast<size_t>(j)]);
      for (int k = 0; k < dim_; ++k) {
        const NumberField::Elem& ck = c(i, j, k);
        if (base_->is_zero(ck)) continue;
        r[static_cast<size_t>(k)] = base_->add(r[static_cast<size_t>(k)], base_->mul(xy, ck));
      }
    }
  }
  return r;
}

bool StructureLieAlgebra::antisymmetry_check() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k)
        if (!base_->eq(c(i, j, k), base_->neg(c(j, i, k)))) return false;
  return true;
}

bool StructureLieAlgebra::jacobi_check() const {
  for (int i = 0; i < dim_; ++i)
    for (int j = i + 1; j < dim_; ++j)
      for (int k = j + 1; k < dim_; ++k) {
        LieVec a = bracket(bracket(basis_vec(i), basis_vec(j)), basis_vec(k));
        LieVec b = bracket(bracket(basis_vec(j), basis_vec(k)), basis_vec(i));
        LieVec cc = bracket(bracket(basis_vec(k), basis_vec(i)), basis_vec(j));
        if (!vec_is_zero(add(add(a, b), cc))) return false;
      }
  return true;
}

std::vector<LieVec> StructureLieAlgebra::centralizer_basis(const LieVec& x) const {
  // rows of ad(x): row k, column j = bracket(x, e_j)_k
  std::vector<FRow> m(static_cast<size_t>(dim_), FRow(static_cast<size_t>(dim_), base_->zero()));
  for (int j = 0; j < dim_; ++j) {
    LieVec col = bracket(x, basis_vec(j));
    for (int k = 0; k < dim_; ++k) m[static_cast<size_t>(k)][static_cast<size_t>(j)] = col[static_cast<size_t>(k)];
  }
  return field_kernel(std::move(m), *base_);
}

// ---------------- CA audit ----------------

CaAuditReport ca_audit(const StructureLieAlgebra& L, int trials, uint64_t seed) {
  CaAuditReport rep;
  rep.trials = trials;
  rep.seed = seed;
  const NumberField& F = L.field();
  Rng rng(seed);

  auto probe = [&](const LieVec& y) -> bool {
    if (L.vec_is_zero(y)) return false;
    ++rep.candidates_probed;
    auto basis = L.centralizer_basis(y);
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = a + 1; b < basis.size(); ++b) {
        if (!L.vec_is_zero(L.bracket(basis[a], basis[b]))) {
          rep.witness_found = true;
          rep.witness.x = basis[a];
          rep.witness.y = y;
          rep.witness.z = basis[b];
          return true;
        }
      }
    return false;
  };

  for (int i = 0; i < L.dim(); ++i)
    if (probe(L.basis_vec(i))) return rep;

  for (int t = 0; t < trials; ++t) {
    LieVec y = L.zero_vec();
    for (int i = 0; i < L.dim(); ++i) {
      NumberField::Elem e = F.zero();
      for (int j = 0; j < F.degree(); ++j) e[static_cast<size_t>(j)] = static_cast<int>(rng.range(-2, 2));
      y[static_cast<size_t>(i)] = e;
    }
    if (probe(y)) return rep;
  }
  return rep;
}

// ---------------- metabelian constructions ----------------

LinearAction field_mult_action(const std::shared_ptr<const NumberField>& K, int m) {
  LinearAction a;
  a.base = NumberField::rationals();
  int n = K->degree();
  if (m < 0) m = n;
  if (m < 1 || m > n) throw std::domain_error("field_mult_action: 1 <= m <= degree required");
  a.source_dim = m;
  a.target_dim = n;
  NumberField::Elem t = K->gen();
  NumberField::Elem pw = K->one();
  for (int i = 0; i < m; ++i) {
    RatMatrix mm = K->mult_matrix(pw);
    std::vector<std::vector<NumberField::Elem>> mat(
        static_cast<size_t>(n), std::vector<NumberField::Elem>(static_cast<size_t>(n), a.base->zero()));
    for (int r = 0; r < n; ++r)
      for (int ccol = 0; ccol < n; ++ccol) mat[static_cast<size_t>(r)][static_cast<size_t>(ccol)] = a.base->from_rat(mm.at(r, ccol));
    a.mats.push_back(std::move(mat));
    pw = K->mul(pw, t);
  }
  a.field_certificate = true;
  return a;
}

namespace {

std::vector<FRow> action_combination(const LinearAction& a, const std::vector<NumberField::Elem>& combo) {
  const NumberField& F = *a.base;
  std::vector<FRow> m(static_cast<size_t>(a.target_dim), FRow(static_cast<size_t>(a.target_dim), F.zero()));
  for (int i = 0; i < a.source_dim; ++i) {
    if (F.is_zero(combo[static_cast<size_t>(i)])) continue;
    for (int r = 0; r < a.target_dim; ++r)
      for (int col = 0; col < a.target_dim; ++col)
        m[static_cast<size_t>(r)][static_cast<size_t>(col)] =
            F.add(m[static_cast<size_t>(r)][static_cast<size_t>(col)],
                  F.mul(combo[static_cast<size_t>(i)], a.mats[static_cast<size_t>(i)][static_cast<size_t>(r)][static_cast<size_t>(col)]));
  }
  return m;
}

} // namespace

FpfVerdict fixed_point_free_check(const LinearAction& a, FpfMode mode, int trials, uint64_t seed) {
  FpfVerdict v;
  const NumberField& F = *a.base;
  if (mode == FpfMode::Certificate) {
    if (!a.field_certificate)
      throw std::domain_error("certificate mode requires an action built from a field acting by multiplication");
    // the embedding k^m -> K must be injective: the matrices are mult_matrix
    // of independent field elements iff their first columns are independent
    std::vector<FRow> cols;
    for (const auto& mm : a.mats) {
      FRow col(static_cast<size_t>(a.target_dim), F.zero());
      for (int r = 0; r < a.target_dim; ++r) col[static_cast<size_t>(r)] = mm[static_cast<size_t>(r)][0];
      cols.push_back(std::move(col));
    }
    std::vector<FRow> m(static_cast<size_t>(a.target_dim), FRow(cols.size(), F.zero()));
    for (size_t j = 0; j < cols.size(); ++j)
      for (int r = 0; r < a.target_dim; ++r) m[static_cast<size_t>(r)][j] = cols[j][static_cast<size_t>(r)];
    int rank = field_rref(m, F).rank;
    v.fixed_point_free = (rank == a.source_dim);
    v.proven = true;
    return v;
  }
  // exact for m = 1: singular combinations are scalar multiples of alpha(c_1)
  if (a.source_dim == 1) {
    auto mm = action_combination(a, {F.one()});
    auto ker = field_kernel(mm, F);
    v.fixed_point_free = ker.empty();
    v.proven = true;
    if (!ker.empty()) {
      v.witness_combo = {F.one()};
      v.witness_kernel = ker[0];
    }
    return v;
  }
  Rng rng(seed);
  auto try_combo = [&](const std::vector<NumberField::Elem>& combo) {
    auto mm = action_combination(a, combo);
    auto ker = field_kernel(mm, F);
    if (!ker.empty()) {
      v.fixed_point_free = false;
      v.proven = true;
      v.witness_combo = combo;
      v.witness_kernel = ker[0];
      return true;
    }
    return false;
  };
  // source basis vectors first, then seeded random combinations
  for (int i = 0; i < a.source_dim; ++i) {
    std::vector<NumberField::Elem> combo(static_cast<size_t>(a.source_dim), F.zero());
    combo[static_cast<size_t>(i)] = F.one();
    if (try_combo(combo)) return v;
  }
  for (int t = 0; t < trials; ++t) {
    std::vector<NumberField::Elem> combo(static_cast<size_t>(a.source_dim), F.zero());
    bool nonzero = false;
    for (auto& x : combo) {
      x = F.from_rat(static_cast<int>(rng.range(-4, 4)));
      if (!F.is_zero(x)) nonzero = true;
    }
    if (!nonzero) combo[0] = F.one();
    if (try_combo(combo)) return v;
  }
  v.fixed_point_free = true;
  v.proven = false; // randomized acceptance has a documented false-accept risk
  return v;
}

StructureLieAlgebra build_metabelian(const LinearAction& a) {
  const NumberField& F = *a.base;
  // commuting matrices are exactly what makes the semidirect product a Lie
  // algebra with abelian source
  for (size_t i = 0; i < a.mats.size(); ++i)
    for (size_t j = i + 1; j < a.mats.size(); ++j) {
      for (int r = 0; r < a.target_dim; ++r)
        for (int col = 0; col < a.target_dim; ++col) {
          NumberField::Elem lhs = F.zero(), rhs = F.zero();
          for (int s = 0; s < a.target_dim; ++s) {
            lhs = F.add(lhs, F.mul(a.mats[i][static_cast<size_t>(r)][static_cast<size_t>(s)],
                                   a.mats[j][static_cast<size_t>(s)][static_cast<size_t>(col)]));
            rhs = F.add(rhs, F.mul(a.mats[j][static_cast<size_t>(r)][static_cast<size_t>(s)],
                                   a.mats[i][static_cast<size_t>(s)][static_cast<size_t>(col)]));
          }
          if (!F.eq(lhs, rhs)) throw std::domain_error("build_metabelian: action matrices do not commute");
        }
    }
  int m = a.source_dim, n = a.target_dim;
  StructureLieAlgebra L(a.base, m + n, "metabelian");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) {
      LieVec val = L.zero_vec();
      for (int r = 0; r < n; ++r) val[static_cast<size_t>(m + r)] = a.mats[static_cast<size_t>(i)][static_cast<size_t>(r)][static_cast<size_t>(j)];
      L.set_bracket(i, m + j, val);
    }
  return L;
}

StructureLieAlgebra make_abelian(std::shared_ptr<const NumberField> base, int n) {
  return StructureLieAlgebra(std::move(base), n, "abelian");
}

StructureLieAlgebra make_sl2() {
  auto Q = NumberField::rationals();
  StructureLieAlgebra L(Q, 3, "sl2");
  // basis h, e, f
  LieVec v = L.zero_vec();
  v[1] = Q->from_rat(2);
  L.set_bracket(0, 1, v); // [h,e] = 2e
  v = L.zero_vec();
  v[2] = Q->from_rat(-2);
  L.set_bracket(0, 2, v); // [h,f] = -2f
  v = L.zero_vec();
  v[0] = Q->from_rat(1);
  L.set_bracket(1, 2, v); // [e,f] = h
  return L;
}

StructureLieAlgebra build_pure_quaternions(const Rat& a, const Rat& b) {
  if (a == 0 || b == 0) throw std::domain_error("quaternion parameters must be nonzero");
  auto Q = NumberField::rationals();
  StructureLieAlgebra L(Q, 3, "pure_quaternions");
  // basis u, v, w = uv
  LieVec val = L.zero_vec();
  val[2] = Q->from_rat(2);
  L.set_bracket(0, 1, val); // [u,v] = 2uv
  val = L.zero_vec();
  val[1] = Q->from_rat(2 * a);
  L.set_bracket(0, 2, val); // [u,uv] = 2a v
  val = L.zero_vec();
  val[0] = Q->from_rat(-2 * b);
  L.set_bracket(1, 2, val); // [v,uv] = -2b u
  return L;
}

// ---------------- quasi-split sl3 ----------------

QuasiSplitSl3 build_quasi_split_sl3(const Rat& q) {
  if (rat_is_square(q)) throw std::domain_error("q must be a non-square in the base field");
  auto F = NumberField::quadratic(q);
  using E = NumberField::Elem;
  auto rat = [&](long long r) { return F->from_rat(Rat(r)); };
  auto y = F->gen();
  auto ym = [&](long long r) { return F->mul_rat(y, Rat(r)); };
  using Mat3 = std::array<std::array<E, 3>, 3>;
  auto zero3 = [&]() {
    Mat3 m;
    for (auto& row : m)
      for (auto& x : row) x = F->zero();
    return m;
  };
  std::vector<Mat3> basis(8, zero3());
  // parameters a,b,c,d,e,f,g,h of the displayed matrix, one at a time
  basis[0][0][0] = rat(1);  basis[0][2][2] = rat(-1);                       // a
  basis[1][0][0] = ym(1);   basis[1][1][1] = ym(-2); basis[1][2][2] = ym(1); // b
  basis[2][0][1] = rat(1);  basis[2][1][2] = rat(-1);                       // c
  basis[3][0][1] = ym(1);   basis[3][1][2] = ym(1);                         // d
  basis[4][0][2] = ym(1);                                                   // e
  basis[5][1][0] = rat(1);  basis[5][2][1] = rat(-1);                       // f
  basis[6][1][0] = ym(1);   basis[6][2][1] = ym(1);                         // g
  basis[7][2][0] = ym(1);                                                   // h

  for (const auto& m : basis) {
    E tr = F->add(F->add(m[0][0], m[1][1]), m[2][2]);
    if (!F->is_zero(tr)) throw std::runtime_error("quasi-split sl3: basis matrix is not traceless");
  }

  auto mat_bracket = [&](const Mat3& A, const Mat3& B) {
    Mat3 r = zero3();
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        E acc = F->zero();
        for (int k = 0; k < 3; ++k) {
          acc = F->add(acc, F->mul(A[static_cast<size_t>(i)][static_cast<size_t>(k)], B[static_cast<size_t>(k)][static_cast<size_t>(j)]));
          acc = F->sub(acc, F->mul(B[static_cast<size_t>(i)][static_cast<size_t>(k)], A[static_cast<size_t>(k)][static_cast<size_t>(j)]));
        }
        r[static_cast<size_t>(i)][static_cast<size_t>(j)] = acc;
      }
    return r;
  };

  // coordinates: 18 rationals per matrix (constant and y parts of 9 entries)
  auto flatten = [&](const Mat3& m) {
    std::vector<Rat> v;
    v.reserve(18);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        v.push_back(m[static_cast<size_t>(i)][static_cast<size_t>(j)][0]);
        v.push_back(m[static_cast<size_t>(i)][static_cast<size_t>(j)][1]);
      }
    return v;
  };

  RatMatrix bm(18, 8);
  for (int j = 0; j < 8; ++j) {
    auto fl = flatten(basis[static_cast<size_t>(j)]);
    for (int i = 0; i < 18; ++i) bm.at(i, j) = fl[static_cast<size_t>(i)];
  }

  auto Qf = NumberField::rationals();
  QuasiSplitSl3 out{StructureLieAlgebra(Qf, 8, "quasi_split_sl3"), 1, 4, 3};
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      auto br = mat_bracket(basis[static_cast<size_t>(i)], basis[static_cast<size_t>(j)]);
      std::vector<Rat> rhs = flatten(br);
      std::vector<Rat> x;
      if (!rat_solve(bm, rhs, x))
        throw std::runtime_error("quasi-split sl3: bracket left the span of the displayed matrices");
      // verify the solution exactly (rat_solve picks one solution; the basis
      // matrices are independent so it is unique)
      LieVec val = out.L.zero_vec();
      for (int k = 0; k < 8; ++k) val[static_cast<size_t>(k)] = Qf->from_rat(x[static_cast<size_t>(k)]);
      out.L.set_bracket(i, j, val);
    }
  return out;
}

// ---------------- derived algebra of a cyclic algebra ----------------

std::vector<NumberField::Elem> DerivedCyclicAlgebra::d_mul(const std::vector<NumberField::Elem>& a,
                                                           const std::vector<NumberField::Elem>& b) const {
  std::vector<NumberField::Elem> r(static_cast<size_t>(n), W->zero());
  for (int i = 0; i < n; ++i) {
    if (W->is_zero(a[static_cast<size_t>(i)])) continue;
    for (int j = 0; j < n; ++j) {
      if (W->is_zero(b[static_cast<size_t>(j)])) continue;
      NumberField::Elem term = W->mul(a[static_cast<size_t>(i)], W->sigma_iter(b[static_cast<size_t>(j)], i));
      int k = i + j;
      if (k >= n) {
        k -= n;
        term = W->mul_rat(term, gamma);
      }
      r[static_cast<size_t>(k)] = W->add(r[static_cast<size_t>(k)], term);
    }
  }
  return r;
}

std::vector<NumberField::Elem> DerivedCyclicAlgebra::d_bracket(const std::vector<NumberField::Elem>& a,
                                                               const std::vector<NumberField::Elem>& b) const {
  auto ab = d_mul(a, b);
  auto ba = d_mul(b, a);
  for (int i = 0; i < n; ++i) ab[static_cast<size_t>(i)] = W->sub(ab[static_cast<size_t>(i)], ba[static_cast<size_t>(i)]);
  return ab;
}

DerivedCyclicAlgebra build_derived_cyclic(int n) {
  if (n < 2) throw std::domain_error("degree must be >= 2");
  auto W = NumberField::cyclic(n);
  if (W->sigma_order() != n) throw std::domain_error("cyclic model automorphism order mismatch");
  auto Q = NumberField::rationals();

  // trace-zero hyperplane W_0
  RatMatrix trrow(1, n);
  for (int j = 0; j < n; ++j) {
    NumberField::Elem tj = W->zero();
    tj[static_cast<size_t>(j)] = 1;
    trrow.at(0, j) = W->trace(tj);
  }
  auto w0 = rat_kernel(trrow); // n-1 vectors

  DerivedCyclicAlgebra dc{StructureLieAlgebra(Q, n * n - 1, "derived_cyclic_" + std::to_string(n)),
                          W, n, Rat(2), {}, false, -1, -1, 0};

  // adapted basis for composite n: lead with a generator of M cap W_0 where M
  // is the fixed field of sigma^{i0}
  if (n % 2 == 0 || n % 3 == 0) {
    int i0 = (n % 2 == 0) ? 2 : 3;
    if (i0 < n) {
      RatMatrix stk(1 + n, n);
      for (int j = 0; j < n; ++j) stk.at(0, j) = trrow.at(0, j);
      for (int j = 0; j < n; ++j) {
        NumberField::Elem tj = W->zero();
        tj[static_cast<size_t>(j)] = 1;
        NumberField::Elem im = W->sub(W->sigma_iter(tj, i0), tj);
        for (int i = 0; i < n; ++i) stk.at(1 + i, j) = im[static_cast<size_t>(i)];
      }
      auto fixed0 = rat_kernel(stk);
      if (!fixed0.empty()) {
        std::vector<std::vector<Rat>> adapted = fixed0;
        for (const auto& v : w0) {
          // keep only extensions that grow the rank
          RatMatrix test(static_cast<int>(adapted.size()) + 1, n);
          for (size_t r = 0; r < adapted.size(); ++r)
            for (int j2 = 0; j2 < n; ++j2) test.at(static_cast<int>(r), j2) = adapted[r][static_cast<size_t>(j2)];
          for (int j2 = 0; j2 < n; ++j2) test.at(static_cast<int>(adapted.size()), j2) = v[static_cast<size_t>(j2)];
          if (rat_rank(test) == static_cast<int>(adapted.size()) + 1) adapted.push_back(v);
          if (static_cast<int>(adapted.size()) == n - 1) break;
        }
        if (static_cast<int>(adapted.size()) == n - 1) {
          dc.w0_basis = adapted;
          dc.has_witness = true;
          dc.i0 = i0;
          dc.witness_b_idx = 0;
          dc.witness_a_idx = static_cast<int>(fixed0.size()); // first extension vector
        }
      }
    }
  }
  if (dc.w0_basis.empty()) dc.w0_basis = w0;

  // L-basis as x-graded D-vectors: W_0 basis at grade 0, then t^a x^i
  int dim = n * n - 1;
  auto basis_dvec = [&](int idx) {
    std::vector<NumberField::Elem> v(static_cast<size_t>(n), W->zero());
    if (idx < n - 1) {
      NumberField::Elem e = W->zero();
      for (int j = 0; j < n; ++j) e[static_cast<size_t>(j)] = dc.w0_basis[static_cast<size_t>(idx)][static_cast<size_t>(j)];
      v[0] = e;
    } else {
      int rest = idx - (n - 1);
      int grade = 1 + rest / n;
      int a = rest % n;
      NumberField::Elem e = W->zero();
      e[static_cast<size_t>(a)] = 1;
      v[static_cast<size_t>(grade)] = e;
    }
    return v;
  };
  // solve brackets into the basis: columns of the n^2 x (n^2-1) basis matrix
  RatMatrix bm(n * n, dim);
  for (int j = 0; j < dim; ++j) {
    auto v = basis_dvec(j);
    for (int g = 0; g < n; ++g)
      for (int a = 0; a < n; ++a) bm.at(g * n + a, j) = v[static_cast<size_t>(g)][static_cast<size_t>(a)];
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      auto br = dc.d_bracket(basis_dvec(i), basis_dvec(j));
      std::vector<Rat> rhs(static_cast<size_t>(n) * n, Rat(0));
      for (int g = 0; g < n; ++g)
        for (int a = 0; a < n; ++a) rhs[static_cast<size_t>(g * n + a)] = br[static_cast<size_t>(g)][static_cast<size_t>(a)];
      std::vector<Rat> x;
      if (!rat_solve(bm, rhs, x))
        throw std::runtime_error("derived cyclic: bracket left the derived subalgebra span");
      LieVec val = dc.L.zero_vec();
      for (int k = 0; k < dim; ++k) val[static_cast<size_t>(k)] = Q->from_rat(x[static_cast<size_t>(k)]);
      dc.L.set_bracket(i, j, val);
    }
  return dc;
}

std::vector<LieVec> DerivedCyclicAlgebra::witness_triple() const {
  if (!has_witness) throw std::domain_error("no witness for prime degree");
  LieVec a = L.basis_vec(witness_a_idx);
  LieVec b = L.basis_vec(witness_b_idx);
  LieVec bx = L.zero_vec();
  auto Q = L.field_ptr();
  for (int j = 0; j < n; ++j) {
    const Rat& cj = w0_basis[static_cast<size_t>(witness_b_idx)][static_cast<size_t>(j)];
    if (cj == 0) continue;
    int idx = (n - 1) + (i0 - 1) * n + j;
    bx[static_cast<size_t>(idx)] = Q->from_rat(cj);
  }
  return {a, b, bx};
}

bool star_formula_check(const DerivedCyclicAlgebra& dc, const NumberField::Elem& z,
                        const NumberField::Elem& zp, int i) {
  if (i < 1 || i >= dc.n) throw std::domain_error("star formula: 1 <= i <= n-1 required");
  const auto& W = dc.W;
  std::vector<NumberField::Elem> a(static_cast<size_t>(dc.n), W->zero());
  a[0] = z;
  std::vector<NumberField::Elem> b(static_cast<size_t>(dc.n), W->zero());
  b[static_cast<size_t>(i)] = zp;
  auto lhs = dc.d_bracket(a, b);
  NumberField::Elem expect = W->mul(W->sub(z, W->sigma_iter(z, i)), zp);
  for (int g = 0; g < dc.n; ++g) {
    const NumberField::Elem& want = (g == i) ? expect : W->zero();
    if (!W->eq(lhs[static_cast<size_t>(g)], want)) return false;
  }
  return true;
}

// ---------------- quotients ----------------

StructureLieAlgebra quotient_by_ideal(const StructureLieAlgebra& L, const std::vector<LieVec>& ideal_gens) {
  const NumberField& F = L.field();
  int dim = L.dim();
  // row-reduce the generators to a basis of the span
  std::vector<FRow> rows;
  for (const auto& g : ideal_gens) rows.push_back(g);
  if (rows.empty()) rows.push_back(L.zero_vec());
  FRref rr = field_rref(rows, F);
  std::vector<LieVec> ideal_basis;
  for (int i = 0; i < rr.rank; ++i) ideal_basis.push_back(rows[static_cast<size_t>(i)]);

  // ideal test with named violating pair
  auto in_span = [&](const LieVec& v) {
    std::vector<NumberField::Elem> x;
    return field_solve_cols(ideal_basis, v, F, x);
  };
  for (int i = 0; i < dim; ++i)
    for (size_t j = 0; j < ideal_basis.size(); ++j) {
      LieVec br = L.bracket(L.basis_vec(i), ideal_basis[j]);
      if (!L.vec_is_zero(br) && !in_span(br)) throw NonIdealError(i, static_cast<int>(j));
    }

  // complement = non-pivot coordinates of the reduced ideal basis
  std::vector<FRow> red = ideal_basis;
  FRref rr2 = field_rref(red, F);
  std::vector<bool> is_pivot(static_cast<size_t>(dim), false);
  for (int c : rr2.pivot_cols) is_pivot[static_cast<size_t>(c)] = true;
  std::vector<int> comp;
  for (int i = 0; i < dim; ++i)
    if (!is_pivot[static_cast<size_t>(i)]) comp.push_back(i);

  int qdim = static_cast<int>(comp.size());
  if (qdim == 0) throw std::domain_error("quotient by the whole algebra");
  StructureLieAlgebra Qa(L.field_ptr(), qdim, L.name() + "_quot");

  // express brackets of complement vectors in (ideal basis | complement)
  std::vector<LieVec> full_cols = ideal_basis;
  for (int ci : comp) full_cols.push_back(L.basis_vec(ci));
  for (int a = 0; a < qdim; ++a)
    for (int b = a + 1; b < qdim; ++b) {
      LieVec br = L.bracket(L.basis_vec(comp[static_cast<size_t>(a)]), L.basis_vec(comp[static_cast<size_t>(b)]));
      std::vector<NumberField::Elem> x;
      if (!field_solve_cols(full_cols, br, F, x))
        throw std::runtime_error("quotient: bracket not expressible");
      LieVec val = Qa.zero_vec();
      for (int k = 0; k < qdim; ++k) val[static_cast<size_t>(k)] = x[ideal_basis.size() + static_cast<size_t>(k)];
      Qa.set_bracket(a, b, val);
    }
  return Qa;
}

// ---------------- BCH ----------------

namespace {

Rat factorial_rat(int n) {
  Rat r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

int rat_den_val(const Rat& r, uint32_t p) {
  Int den = boost::multiprecision::denominator(r);
  int v = 0;
  while (den % p == 0) {
    den /= p;
    ++v;
  }
  return v;
}

uint64_t int_mod(const Int& x, uint64_t m) {
  Int r = x % static_cast<long long>(m);
  if (r < 0) r += static_cast<long long>(m);
  return r.convert_to<uint64_t>();
}

uint64_t invmod_u64(uint64_t a, uint64_t m) {
  int64_t t = 0, newt = 1;
  int64_t r = static_cast<int64_t>(m), newr = static_cast<int64_t>(a % m);
  while (newr != 0) {
    int64_t q = r / newr;
    std::swap(t -= q * newt, newt);
    std::swap(r -= q * newr, newr);
  }
  if (r != 1) throw std::domain_error("invmod: not invertible");
  if (t < 0) t += static_cast<int64_t>(m);
  return static_cast<uint64_t>(t);
}

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

} // namespace

const std::vector<std::vector<std::pair<uint32_t, Rat>>>& bch_word_coefficients(int degree) {
  static std::map<int, std::vector<std::vector<std::pair<uint32_t, Rat>>>> cache;
  auto it = cache.find(degree);
  if (it != cache.end()) return it->second;

  // exp(X)exp(Y) - 1 in the truncated free associative algebra: words X^aY^b
  // with coefficient 1/(a! b!)
  int D = degree;
  std::vector<std::vector<Rat>> w(static_cast<size_t>(D) + 1);
  for (int len = 0; len <= D; ++len) w[static_cast<size_t>(len)].assign(1ULL << len, Rat(0));
  for (int a2 = 0; a2 <= D; ++a2)
    for (int b2 = 0; a2 + b2 <= D; ++b2) {
      if (a2 + b2 == 0) continue;
      uint32_t bits = ((1u << b2) - 1u) << a2;
      w[static_cast<size_t>(a2 + b2)][bits] = Rat(1) / (factorial_rat(a2) * factorial_rat(b2));
    }

  // z = log(1 + w) = sum (-1)^{n-1}/n w^n, truncated
  std::vector<std::vector<Rat>> z = w;
  std::vector<std::vector<Rat>> cur = w;
  for (int n = 2; n <= D; ++n) {
    std::vector<std::vector<Rat>> next(static_cast<size_t>(D) + 1);
    for (int len = 0; len <= D; ++len) next[static_cast<size_t>(len)].assign(1ULL << len, Rat(0));
    for (int len = n - 1; len <= D; ++len) {
      const auto& level = cur[static_cast<size_t>(len)];
      for (uint32_t bits = 0; bits < (1u << len); ++bits) {
        const Rat& cw = level[bits];
        if (cw == 0) continue;
        for (int a2 = 0; len + a2 <= D; ++a2)
          for (int b2 = (a2 == 0 ? 1 : 0); len + a2 + b2 <= D; ++b2) {
            uint32_t blk = ((1u << b2) - 1u) << a2;
            uint32_t nb = bits | (blk << len);
            next[static_cast<size_t>(len + a2 + b2)][nb] += cw / (factorial_rat(a2) * factorial_rat(b2));
          }
      }
    }
    cur = std::move(next);
    Rat sign = (n % 2 == 0) ? Rat(-1) : Rat(1);
    for (int len = n; len <= D; ++len)
      for (uint32_t bits = 0; bits < (1u << len); ++bits)
        if (cur[static_cast<size_t>(len)][bits] != 0)
          z[static_cast<size_t>(len)][bits] += sign * cur[static_cast<size_t>(len)][bits] / n;
  }

  // Dynkin-Specht-Wever: the Lie element z_d equals (1/d) sum c_w [w] with the
  // right-nested bracketing. Words whose last two letters agree bracket to 0.
  std::vector<std::vector<std::pair<uint32_t, Rat>>> out(static_cast<size_t>(D) + 1);
  for (int len = 1; len <= D; ++len) {
    for (uint32_t bits = 0; bits < (1u << len); ++bits) {
      Rat c = z[static_cast<size_t>(len)][bits];
      if (c == 0) continue;
      if (len >= 2) {
        uint32_t last = (bits >> (len - 1)) & 1u;
        uint32_t prev = (bits >> (len - 2)) & 1u;
        if (last == prev) continue;
      }
      out[static_cast<size_t>(len)].push_back({bits, c / len});
    }
  }
  return cache.emplace(degree, std::move(out)).first->second;
}

BchContext::BchContext(const StructureLieAlgebra& L, uint32_t p, int prec) : p_(p), prec_(prec), dim_(L.dim()) {
  if (p == 2) throw std::domain_error("BCH group law: p must be odd");
  if (!is_prime_u64(p)) throw std::domain_error("p must be prime");
  if (prec < 1) throw std::domain_error("precision must be >= 1");
  if (L.field().degree() != 1) throw std::domain_error("BCH lattice requires rational structure constants");

  // truncation degree: every degree-d term on p*Lambda has valuation at least
  // d - floor((d-1)/(p-1)) - v_p(d); take the largest D where that dips below
  // the precision
  auto guaranteed = [&](int d) {
    int vpd = 0;
    int dd = d;
    while (dd % static_cast<int>(p) == 0) {
      dd /= static_cast<int>(p);
      ++vpd;
    }
    return d - (d - 1) / (static_cast<int>(p) - 1) - vpd;
  };
  int D = 1;
  int scan_to = std::max(200, 8 * prec + 64);
  for (int d = 2; d <= scan_to; ++d)
    if (guaranteed(d) < prec) D = d;
  if (D > 20)
    throw std::domain_error("BCH truncation degree " + std::to_string(D) +
                            " exceeds the supported cap 20 at this precision");
  degree_ = D;

  const auto& table = bch_word_coefficients(D);
  numax_ = 0;
  for (const auto& lvl : table)
    for (const auto& [bits, c] : lvl) numax_ = std::max(numax_, rat_den_val(c, p));
  kwork_ = prec_ + numax_;
  if (kwork_ > max_rel_digits(p)) throw std::domain_error("precision too large for 64-bit BCH arithmetic");
  mod_prec_ = pow_u64(p, static_cast<unsigned>(prec_));
  mod_work_ = pow_u64(p, static_cast<unsigned>(kwork_));

  // p-integral structure constants mod p^kwork
  sc_.assign(static_cast<size_t>(dim_) * dim_ * dim_, 0);
  for (int i = 0; i < dim_; ++i)
    for (int j = 0; j < dim_; ++j)
      for (int k = 0; k < dim_; ++k) {
        Rat c = L.c(i, j, k)[0];
        Int den = boost::multiprecision::denominator(c);
        if (den % p == 0) throw std::domain_error("structure constants are not p-integral");
        uint64_t num = int_mod(boost::multiprecision::numerator(c), mod_work_);
        uint64_t dv = invmod_u64(int_mod(den, mod_work_), mod_work_);
        sc_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k] = mulmod_u64(num, dv, mod_work_);
      }

  for (size_t len = 1; len < table.size(); ++len)
    for (const auto& [bits, c] : table[len]) {
      Term t;
      t.len = static_cast<uint8_t>(len);
      t.bits = bits;
      t.nu = rat_den_val(c, p);
      Int den = boost::multiprecision::denominator(c);
      for (int v = 0; v < t.nu; ++v) den /= p;
      uint64_t dv = invmod_u64(int_mod(den, mod_work_), mod_work_);
      uint64_t num = int_mod(boost::multiprecision::numerator(c), mod_work_);
      t.factor = mulmod_u64(num, dv, mod_work_);
      terms_.push_back(t);
    }
}

std::vector<uint64_t> BchContext::reduce(const std::vector<long long>& coords) const {
  std::vector<uint64_t> r(static_cast<size_t>(dim_), 0);
  for (int i = 0; i < dim_; ++i) {
    long long v = coords[static_cast<size_t>(i)] % static_cast<long long>(mod_prec_);
    if (v < 0) v += static_cast<long long>(mod_prec_);
    r[static_cast<size_t>(i)] = static_cast<uint64_t>(v);
  }
  return r;
}

std::vector<uint64_t> BchContext::neg(const std::vector<uint64_t>& u) const {
  std::vector<uint64_t> r(u.size());
  for (size_t i = 0; i < u.size(); ++i) r[i] = (mod_prec_ - u[i]) % mod_prec_;
  return r;
}

bool BchContext::is_zero(const std::vector<uint64_t>& u) const {
  for (uint64_t x : u)
    if (x % mod_prec_ != 0) return false;
  return true;
}

bool BchContext::eq(const std::vector<uint64_t>& u, const std::vector<uint64_t>& v) const {
  for (size_t i = 0; i < u.size(); ++i)
    if (u[i] % mod_prec_ != v[i] % mod_prec_) return false;
  return true;
}

std::vector<uint64_t> BchContext::bracket_work(const std::vector<uint64_t>& a, const std::vector<uint64_t>& b) const {
  std::vector<uint64_t> r(static_cast<size_t>(dim_), 0);
  for (int i = 0; i < dim_; ++i) {
    if (a[static_cast<size_t>(i)] == 0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (b[static_cast<size_t>(j)] == 0) continue;
      uint64_t ab = mulmod_u64(a[static_cast<size_t>(i)], b[static_cast<size_t>(j)], mod_work_);
      const uint64_t* row = &sc_[(static_cast<size_t>(i) * dim_ + j) * dim_];
      for (int k = 0; k < dim_; ++k) {
        if (row[k] == 0) continue;
        r[static_cast<size_t>(k)] = (r[static_cast<size_t>(k)] + mulmod_u64(ab, row[k], mod_work_)) % mod_work_;
      }
    }
  }
  return r;
}

std::vector<uint64_t> BchContext::lie_bracket(const std::vector<uint64_t>& u, const std::vector<uint64_t>& v) const {
  auto r = bracket_work(u, v);
  for (auto& x : r) x %= mod_prec_;
  return r;
}

std::vector<uint64_t> BchContext::bch(const std::vector<uint64_t>& u, const std::vector<uint64_t>& v) const {
  for (uint64_t x : u)
    if (x % p_ != 0) throw std::domain_error("bch: input not in p*Lambda");
  for (uint64_t x : v)
    if (x % p_ != 0) throw std::domain_error("bch: input not in p*Lambda");

  // suffix-shared evaluation of all right-nested bracket words
  std::vector<std::vector<std::vector<uint64_t>>> level(static_cast<size_t>(degree_) + 1);
  level[1] = {u, v};
  for (int len2 = 2; len2 <= degree_; ++len2) {
    auto& cur = level[static_cast<size_t>(len2)];
    cur.resize(1ULL << len2);
    for (uint32_t bits = 0; bits < (1u << len2); ++bits) {
      const auto& head = (bits & 1u) ? v : u;
      cur[bits] = bracket_work(head, level[static_cast<size_t>(len2 - 1)][bits >> 1]);
    }
  }

  std::vector<uint64_t> acc(static_cast<size_t>(dim_), 0);
  for (const auto& t : terms_) {
    const auto& val = level[t.len][t.bits];
    uint64_t pshift = pow_u64(p_, static_cast<unsigned>(t.nu));
    for (int k = 0; k < dim_; ++k) {
      uint64_t x = val[static_cast<size_t>(k)];
      if (x == 0) continue;
      // the true integer is divisible by p^nu; divide the residue exactly
      uint64_t q = x / pshift;
      uint64_t term = mulmod_u64(q, t.factor, mod_work_);
      acc[static_cast<size_t>(k)] = (acc[static_cast<size_t>(k)] + term) % mod_prec_;
    }
  }
  for (auto& x : acc) x %= mod_prec_;
  return acc;
}

std::vector<uint64_t> BchContext::group_commutator(const std::vector<uint64_t>& u, const std::vector<uint64_t>& v) const {
  return bch(bch(bch(u, v), neg(u)), neg(v));
}

std::vector<uint64_t> BchContext::random_element(Rng& rng) const {
  std::vector<uint64_t> r(static_cast<size_t>(dim_), 0);
  for (auto& x : r) x = (p_ * rng.below(mod_prec_ / p_)) % mod_prec_;
  return r;
}

CommutationAuditReport group_lie_commutation_audit(const BchContext& ctx, int trials, uint64_t seed) {
  CommutationAuditReport rep;
  rep.trials = trials;
  rep.seed = seed;
  Rng master(seed);
  for (int t = 0; t < trials; ++t) {
    Rng rng = master.child(static_cast<uint64_t>(t));
    auto u = ctx.random_element(rng);
    std::vector<uint64_t> v;
    if (t % 5 == 4) {
      // colinear pair: commutes in both structures
      uint64_t lam = rng.below(ctx.modulus());
      v = u;
      for (auto& x : v) x = (static_cast<unsigned __int128>(x) * lam) % ctx.modulus();
    } else {
      v = ctx.random_element(rng);
    }
    bool lie_comm = ctx.is_zero(ctx.lie_bracket(u, v));
    bool grp_comm = ctx.is_zero(ctx.group_commutator(u, v));
    if (lie_comm) ++rep.commuting_pairs;
    if (lie_comm != grp_comm) ++rep.mismatches;
  }
  return rep;
}

} // namespace cakit
