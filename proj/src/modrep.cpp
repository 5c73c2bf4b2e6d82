#include "cakit/modrep.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cakit {

// ---------------- Ring ----------------

namespace {
constexpr uint32_t kGfPolys[9] = {0, 0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b};
}

Ring Ring::gf(int e) {
  if (e < 1 || e > 8) throw std::domain_error("GF(2^e) supported for 1 <= e <= 8");
  Ring r;
  r.kind = Kind::GF2e;
  r.param = e;
  r.modpoly = kGfPolys[e];
  r.mask = 0;
  return r;
}

Ring Ring::z2k(int k) {
  if (k < 1 || k > 30) throw std::domain_error("Z/2^k supported for 1 <= k <= 30");
  Ring r;
  r.kind = Kind::Z2k;
  r.param = k;
  r.modpoly = 0;
  r.mask = (k == 30) ? 0x3fffffffu : ((1u << k) - 1u);
  return r;
}

uint32_t Ring::add(uint32_t a, uint32_t b) const {
  return kind == Kind::GF2e ? (a ^ b) : ((a + b) & mask);
}

uint32_t Ring::sub(uint32_t a, uint32_t b) const {
  return kind == Kind::GF2e ? (a ^ b) : ((a - b) & mask);
}

uint32_t Ring::neg(uint32_t a) const { return kind == Kind::GF2e ? a : ((0u - a) & mask); }

uint32_t Ring::mul(uint32_t a, uint32_t b) const {
  if (kind == Kind::Z2k) return (a * b) & mask;
  uint32_t r = 0;
  while (b) {
    if (b & 1u) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a & (1u << param)) a ^= modpoly;
  }
  return r;
}

bool Ring::is_unit(uint32_t a) const { return kind == Kind::GF2e ? a != 0 : (a & 1u) != 0; }

uint32_t Ring::inv(uint32_t a) const {
  if (!is_unit(a)) throw std::domain_error("ring inverse of a non-unit");
  if (kind == Kind::Z2k) {
    uint32_t x = a; // Newton for 2-adic inverse
    for (int i = 0; i < 6; ++i) x = (x * (2u - a * x)) & mask;
    return x & mask;
  }
  // Fermat: a^(2^e - 2)
  uint32_t r = 1, base = a;
  uint64_t exp = (1ULL << param) - 2;
  while (exp) {
    if (exp & 1) r = mul(r, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return r;
}

int Ring::val(uint32_t a) const {
  if (kind == Kind::GF2e) return a == 0 ? 1 : 0;
  if (a == 0) return param;
  int v = 0;
  while (!(a & 1u)) {
    a >>= 1;
    ++v;
  }
  return v;
}

uint32_t Ring::two_pow(int t) const {
  if (kind == Kind::GF2e) return t == 0 ? 1u : 0u;
  return t >= param ? 0u : (1u << t);
}

uint32_t Ring::from_int(long long v) const {
  if (kind == Kind::GF2e) return static_cast<uint32_t>(((v % 2) + 2) % 2);
  long long md = static_cast<long long>(mask) + 1;
  return static_cast<uint32_t>(((v % md) + md) % md);
}

std::string Ring::str(uint32_t a) const { return std::to_string(a); }

// ---------------- matrices ----------------

MMat MMat::identity(int n) {
  MMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MMat mmat_mul(const Ring& R, const MMat& x, const MMat& y) {
  if (x.cols != y.rows) throw std::domain_error("matrix shape mismatch");
  MMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      uint32_t v = x.at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < y.cols; ++j) {
        uint32_t w = y.at(k, j);
        if (w == 0) continue;
        r.at(i, j) = R.add(r.at(i, j), R.mul(v, w));
      }
    }
  return r;
}

MMat mmat_add(const Ring& R, const MMat& x, const MMat& y) {
  MMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = R.add(x.a[i], y.a[i]);
  return r;
}

std::vector<uint32_t> mmat_apply(const Ring& R, const MMat& m, const std::vector<uint32_t>& v) {
  std::vector<uint32_t> r(static_cast<size_t>(m.rows), 0);
  for (int j = 0; j < m.cols; ++j) {
    uint32_t c = v[static_cast<size_t>(j)];
    if (c == 0) continue;
    for (int i = 0; i < m.rows; ++i) {
      uint32_t w = m.at(i, j);
      if (w == 0) continue;
      r[static_cast<size_t>(i)] = R.add(r[static_cast<size_t>(i)], R.mul(w, c));
    }
  }
  return r;
}

// ---------------- Smith reduction over the chain ring ----------------

SmithSolver::SmithSolver(const Ring& r, MMat m) : R(r), rows(m.rows), cols(m.cols), D(std::move(m)) {
  U = MMat::identity(rows);
  V = MMat::identity(cols);
  int rank = std::min(rows, cols);
  int rpos = 0;
  for (; rpos < rank; ++rpos) {
    // minimal-valuation pivot in the remaining submatrix
    int bi = -1, bj = -1, bv = R.val_cap() + 1;
    for (int i = rpos; i < rows; ++i)
      for (int j = rpos; j < cols; ++j) {
        if (D.at(i, j) == 0) continue;
        int v = R.val(D.at(i, j));
        if (v < bv) {
          bv = v;
          bi = i;
          bj = j;
        }
      }
    if (bi < 0) break;
    if (bi != rpos)
      for (int j = 0; j < cols; ++j) std::swap(D.at(bi, j), D.at(rpos, j));
    if (bi != rpos)
      for (int j = 0; j < rows; ++j) std::swap(U.at(bi, j), U.at(rpos, j));
    if (bj != rpos) {
      for (int i = 0; i < rows; ++i) std::swap(D.at(i, bj), D.at(i, rpos));
      for (int i = 0; i < cols; ++i) std::swap(V.at(i, bj), V.at(i, rpos));
    }
    // normalize the pivot to 2^v (or 1 over a field)
    uint32_t piv = D.at(rpos, rpos);
    uint32_t unit = (R.kind == Ring::Kind::Z2k) ? (piv >> bv) : piv;
    uint32_t uinv = R.inv(unit);
    for (int j = 0; j < cols; ++j) D.at(rpos, j) = R.mul(D.at(rpos, j), uinv);
    for (int j = 0; j < rows; ++j) U.at(rpos, j) = R.mul(U.at(rpos, j), uinv);
    // clear the pivot column with row operations (all entries have val >= bv)
    for (int i = 0; i < rows; ++i) {
      if (i == rpos || D.at(i, rpos) == 0) continue;
      // pivot is 2^bv (or 1 over a field) and divides every remaining entry
      uint32_t q = (R.kind == Ring::Kind::Z2k) ? (D.at(i, rpos) >> bv) : D.at(i, rpos);
      for (int j = 0; j < cols; ++j) D.at(i, j) = R.sub(D.at(i, j), R.mul(q, D.at(rpos, j)));
      for (int j = 0; j < rows; ++j) U.at(i, j) = R.sub(U.at(i, j), R.mul(q, U.at(rpos, j)));
    }
    // clear the pivot row with column operations
    for (int j = 0; j < cols; ++j) {
      if (j == rpos || D.at(rpos, j) == 0) continue;
      uint32_t q = (R.kind == Ring::Kind::Z2k) ? (D.at(rpos, j) >> bv) : D.at(rpos, j);
      for (int i = 0; i < rows; ++i) D.at(i, j) = R.sub(D.at(i, j), R.mul(q, D.at(i, rpos)));
      for (int i = 0; i < cols; ++i) V.at(i, j) = R.sub(V.at(i, j), R.mul(q, V.at(i, rpos)));
    }
  }
  divisor_vals.assign(static_cast<size_t>(cols), R.val_cap());
  for (int i = 0; i < std::min(rows, cols); ++i) divisor_vals[static_cast<size_t>(i)] = R.val(D.at(i, i));
}

int SmithSolver::residue_rank() const {
  int r = 0;
  for (int v : divisor_vals)
    if (v == 0) ++r;
  return r;
}

std::vector<std::vector<uint32_t>> SmithSolver::kernel(bool saturated_only) const {
  std::vector<std::vector<uint32_t>> out;
  for (int j = 0; j < cols; ++j) {
    int a = divisor_vals[static_cast<size_t>(j)];
    if (a == 0) continue;
    if (saturated_only && a != R.val_cap())
      throw std::runtime_error("kernel is not a free direct summand (divisor 2^" + std::to_string(a) + ")");
    uint32_t scalev = R.two_pow(R.val_cap() - a);
    if (scalev == 0) continue; // annihilator trivial
    std::vector<uint32_t> v(static_cast<size_t>(cols), 0);
    for (int i = 0; i < cols; ++i) v[static_cast<size_t>(i)] = R.mul(V.at(i, j), scalev);
    out.push_back(std::move(v));
  }
  return out;
}

bool SmithSolver::solve(const std::vector<uint32_t>& b, std::vector<uint32_t>& x) const {
  std::vector<uint32_t> c = mmat_apply(R, U, b);
  std::vector<uint32_t> y(static_cast<size_t>(cols), 0);
  for (int i = 0; i < rows; ++i) {
    uint32_t ci = c[static_cast<size_t>(i)];
    if (i >= cols || divisor_vals[static_cast<size_t>(i)] == R.val_cap()) {
      if (i >= cols || D.at(i, i) == 0) {
        if (ci != 0) return false;
        continue;
      }
    }
    if (ci == 0) continue;
    int a = divisor_vals[static_cast<size_t>(i)];
    if (R.val(ci) < a) return false;
    y[static_cast<size_t>(i)] = (R.kind == Ring::Kind::Z2k) ? (ci >> a) : ci;
  }
  x = mmat_apply(R, V, y);
  return true;
}

int residue_rank(const Ring& R, const MMat& m) { return SmithSolver(R, m).residue_rank(); }

std::vector<int> divisor_valuations(const Ring& R, const MMat& m) { return SmithSolver(R, m).divisor_vals; }

MMat saturated_column_basis(const Ring& R, const MMat& m) {
  struct Piv {
    int row;
    std::vector<uint32_t> col;
  };
  std::vector<Piv> basis;
  for (int j = 0; j < m.cols; ++j) {
    std::vector<uint32_t> v(static_cast<size_t>(m.rows));
    for (int i = 0; i < m.rows; ++i) v[static_cast<size_t>(i)] = m.at(i, j);
    for (const auto& p : basis) {
      uint32_t c = v[static_cast<size_t>(p.row)];
      if (c == 0) continue;
      for (int i = 0; i < m.rows; ++i)
        v[static_cast<size_t>(i)] = R.sub(v[static_cast<size_t>(i)], R.mul(c, p.col[static_cast<size_t>(i)]));
    }
    int prow = -1;
    for (int i = 0; i < m.rows; ++i)
      if (v[static_cast<size_t>(i)] != 0 && R.is_unit(v[static_cast<size_t>(i)])) {
        prow = i;
        break;
      }
    if (prow < 0) {
      bool zero = true;
      for (uint32_t x : v)
        if (x != 0) zero = false;
      if (zero) continue;
      throw std::runtime_error("column span is not saturated");
    }
    uint32_t pinv = R.inv(v[static_cast<size_t>(prow)]);
    for (auto& x : v) x = R.mul(x, pinv);
    basis.push_back({prow, std::move(v)});
  }
  MMat out(m.rows, static_cast<int>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    for (int i = 0; i < m.rows; ++i) out.at(i, static_cast<int>(j)) = basis[j].col[static_cast<size_t>(i)];
  return out;
}

// ---------------- modules ----------------

bool GModule::action_consistent() const {
  for (int g = 0; g < G->order(); ++g)
    for (int h = 0; h < G->order(); ++h) {
      MMat prod = mmat_mul(ring, action(g), action(h));
      const MMat& want = action(G->mul(g, h));
      if (prod.a != want.a) return false;
    }
  return true;
}

GModule trivial_module(const FiniteGroupTable& G, const Ring& R) {
  GModule m;
  m.G = &G;
  m.ring = R;
  m.rank = 1;
  m.act.assign(static_cast<size_t>(G.order()), MMat::identity(1));
  m.provenance = "trivial";
  return m;
}

GModule regular_module(const FiniteGroupTable& G, const Ring& R) {
  GModule m;
  m.G = &G;
  m.ring = R;
  m.rank = G.order();
  m.act.reserve(static_cast<size_t>(G.order()));
  for (int g = 0; g < G.order(); ++g) {
    MMat p(G.order(), G.order());
    for (int h = 0; h < G.order(); ++h) p.at(G.mul(g, h), h) = 1;
    m.act.push_back(std::move(p));
  }
  m.provenance = "regular";
  return m;
}

GModule submodule(const GModule& parent, const MMat& basis, const std::string& provenance) {
  GModule m;
  m.G = parent.G;
  m.ring = parent.ring;
  m.rank = basis.cols;
  SmithSolver solver(parent.ring, basis);
  for (int g = 0; g < parent.G->order(); ++g) {
    MMat img = mmat_mul(parent.ring, parent.action(g), basis);
    MMat x(basis.cols, basis.cols);
    for (int j = 0; j < basis.cols; ++j) {
      std::vector<uint32_t> col(static_cast<size_t>(img.rows));
      for (int i = 0; i < img.rows; ++i) col[static_cast<size_t>(i)] = img.at(i, j);
      std::vector<uint32_t> sol;
      if (!solver.solve(col, sol))
        throw std::runtime_error("submodule: span is not invariant under the action");
      for (int i = 0; i < basis.cols; ++i) x.at(i, j) = sol[static_cast<size_t>(i)];
    }
    m.act.push_back(std::move(x));
  }
  m.provenance = provenance;
  return m;
}

GModule reduce_mod(const GModule& m, int j) {
  if (m.ring.kind != Ring::Kind::Z2k || j > m.ring.param) throw std::domain_error("reduce_mod misuse");
  GModule out = m;
  out.ring = Ring::z2k(j);
  for (auto& mat : out.act)
    for (auto& x : mat.a) x &= out.ring.mask;
  out.provenance = m.provenance + "_mod2^" + std::to_string(j);
  return out;
}

GModule extend_scalars(const GModule& m, const Ring& target) {
  for (const auto& mat : m.act)
    for (uint32_t x : mat.a)
      if (x > 1) throw std::domain_error("extend_scalars expects a 0/1 action");
  GModule out = m;
  out.ring = target;
  out.provenance = m.provenance + "_extended";
  return out;
}

std::vector<std::vector<uint32_t>> fixed_points(const GModule& m, const std::vector<int>& elems) {
  const Ring& R = m.ring;
  MMat stacked(static_cast<int>(elems.size()) * m.rank, m.rank);
  int row0 = 0;
  for (int h : elems) {
    const MMat& a = m.action(h);
    for (int i = 0; i < m.rank; ++i)
      for (int j = 0; j < m.rank; ++j)
        stacked.at(row0 + i, j) = R.sub(a.at(i, j), i == j ? R.one() : R.zero());
    row0 += m.rank;
  }
  return SmithSolver(R, stacked).kernel(false);
}

// ---------------- 2-local structure and idempotents ----------------

TwoLocalData two_local_data(const FiniteGroupTable& G) {
  TwoLocalData d;
  int two_part = 1, m = G.order();
  while (m % 2 == 0) {
    two_part *= 2;
    m /= 2;
  }
  for (int g = 0; g < G.order(); ++g) {
    int o = G.elem_order(g);
    if ((o & (o - 1)) == 0) d.sylow2.push_back(g);
  }
  if (static_cast<int>(d.sylow2.size()) != two_part)
    throw std::domain_error("group is not 2-local (Sylow 2-subgroup not normal): out of scope");
  std::set<int> s(d.sylow2.begin(), d.sylow2.end());
  for (int a : d.sylow2)
    for (int b : d.sylow2)
      if (!s.count(G.mul(a, b)))
        throw std::domain_error("group is not 2-local (2-elements not closed): out of scope");
  d.odd_order = m;
  d.odd_generator = G.identity();
  if (m > 1) {
    for (int g = 0; g < G.order(); ++g)
      if (G.elem_order(g) == m) {
        d.odd_generator = g;
        break;
      }
    if (d.odd_generator == G.identity())
      throw std::domain_error("no cyclic odd complement: out of scope");
  }
  return d;
}

namespace {

std::vector<uint32_t> algebra_mul(const FiniteGroupTable& G, const Ring& R, const std::vector<uint32_t>& a,
                                  const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r(static_cast<size_t>(G.order()), 0);
  for (int g = 0; g < G.order(); ++g) {
    if (a[static_cast<size_t>(g)] == 0) continue;
    for (int h = 0; h < G.order(); ++h) {
      if (b[static_cast<size_t>(h)] == 0) continue;
      int gh = G.mul(g, h);
      r[static_cast<size_t>(gh)] = R.add(r[static_cast<size_t>(gh)], R.mul(a[static_cast<size_t>(g)], b[static_cast<size_t>(h)]));
    }
  }
  return r;
}

uint32_t find_primitive_root_of_unity(const Ring& R, int m) {
  // element of multiplicative order m in GF(2^e)
  if (R.kind != Ring::Kind::GF2e) throw std::domain_error("roots of unity need a field");
  uint64_t q = (1ULL << R.param) - 1;
  if (q % static_cast<uint64_t>(m) != 0) {
    // minimal splitting degree: multiplicative order of 2 mod m
    int e = 1;
    long long pw = 2 % m;
    while (pw != 1) {
      pw = (pw * 2) % m;
      ++e;
    }
    throw std::domain_error("coefficient field does not split the odd part; minimal e = " + std::to_string(e));
  }
  for (uint32_t x = 2; x < (1u << R.param); ++x) {
    uint32_t acc = 1;
    bool ord_m = true;
    for (int i = 1; i < m; ++i) {
      acc = R.mul(acc, x);
      if (acc == 1) {
        ord_m = false;
        break;
      }
    }
    acc = R.mul(acc, x);
    if (ord_m && acc == 1) return x;
  }
  throw std::runtime_error("no primitive root found");
}

} // namespace

std::vector<BlockIdempotent> block_idempotents(const FiniteGroupTable& G, const Ring& R) {
  TwoLocalData d = two_local_data(G);
  int n = G.order();
  int m = d.odd_order;
  std::vector<BlockIdempotent> out;

  auto check_idem = [&](const std::vector<uint32_t>& e) {
    auto sq = algebra_mul(G, R, e, e);
    if (sq != e) throw std::runtime_error("idempotent certificate failed");
  };

  // trivial block: (1/m) (1 + c + ... + c^{m-1})
  std::vector<uint32_t> e0(static_cast<size_t>(n), 0);
  uint32_t invm = R.inv(R.from_int(m));
  int cpow = G.identity();
  for (int i = 0; i < m; ++i) {
    e0[static_cast<size_t>(cpow)] = R.add(e0[static_cast<size_t>(cpow)], invm);
    cpow = G.mul(cpow, d.odd_generator);
  }
  check_idem(e0);
  out.push_back({e0, 1, "triv"});
  if (m == 1) return out;

  bool split = (R.kind == Ring::Kind::GF2e) && (((1ULL << R.param) - 1) % static_cast<uint64_t>(m) == 0);
  if (split) {
    uint32_t omega = find_primitive_root_of_unity(R, m);
    for (int j = 1; j < m; ++j) {
      std::vector<uint32_t> ej(static_cast<size_t>(n), 0);
      int cp = G.identity();
      for (int i = 0; i < m; ++i) {
        // chi_j(c^i)^{-1} = omega^{-ij}
        uint32_t w = 1;
        int expn = ((m - (i * j) % m) % m);
        for (int s = 0; s < expn; ++s) w = R.mul(w, omega);
        ej[static_cast<size_t>(cp)] = R.add(ej[static_cast<size_t>(cp)], R.mul(invm, w));
        cp = G.mul(cp, d.odd_generator);
      }
      check_idem(ej);
      out.push_back({ej, 1, "S" + std::to_string(j)});
    }
    return out;
  }
  if (m == 3) {
    // nontrivial characters fuse over F_2 / Z_2 into one block of dimension 2
    std::vector<uint32_t> e1(static_cast<size_t>(n), 0);
    e1[static_cast<size_t>(G.identity())] = R.one();
    for (int i = 0; i < n; ++i) e1[static_cast<size_t>(i)] = R.sub(e1[static_cast<size_t>(i)], e0[static_cast<size_t>(i)]);
    check_idem(e1);
    out.push_back({e1, 2, "S"});
    return out;
  }
  throw std::domain_error("odd part m = " + std::to_string(m) + " unsupported over this coefficient ring");
}

RadicalInfo radical_basis(const FiniteGroupTable& G, const Ring& R) {
  if (R.kind != Ring::Kind::GF2e)
    throw std::domain_error("radical_basis is defined over field coefficients");
  TwoLocalData d = two_local_data(G);
  int n = G.order();
  MMat cols(n, static_cast<int>(d.sylow2.size()) * n);
  int jc = 0;
  for (int u : d.sylow2) {
    if (u == G.identity()) {
      jc += n;
      continue;
    }
    for (int g = 0; g < n; ++g) {
      // (u - 1) g = ug - g
      cols.at(G.mul(u, g), jc + g) = R.add(cols.at(G.mul(u, g), jc + g), R.one());
      cols.at(g, jc + g) = R.sub(cols.at(g, jc + g), R.one());
    }
    jc += n;
  }
  RadicalInfo info;
  info.basis = saturated_column_basis(R, cols);
  info.dim = info.basis.cols;
  // nilpotency: iterate J^t by multiplying basis elements
  std::vector<std::vector<uint32_t>> gens;
  for (int j = 0; j < info.basis.cols; ++j) {
    std::vector<uint32_t> v(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = info.basis.at(i, j);
    gens.push_back(std::move(v));
  }
  std::vector<std::vector<uint32_t>> cur = gens;
  info.nilpotency = 1;
  while (!cur.empty() && info.nilpotency <= n + 1) {
    // next layer J^{t+1} = J * J^t
    MMat nm(n, static_cast<int>(cur.size() * gens.size()));
    int col = 0;
    for (const auto& a : gens)
      for (const auto& b : cur) {
        auto p = algebra_mul(G, R, a, b);
        for (int i = 0; i < n; ++i) nm.at(i, col) = p[static_cast<size_t>(i)];
        ++col;
      }
    MMat nb = saturated_column_basis(R, nm);
    ++info.nilpotency;
    if (nb.cols == 0) break;
    cur.clear();
    for (int j = 0; j < nb.cols; ++j) {
      std::vector<uint32_t> v(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) v[static_cast<size_t>(i)] = nb.at(i, j);
      cur.push_back(std::move(v));
    }
  }
  // semisimple quotient certificate: dim A/J equals the odd part, i.e. the
  // same radical criterion applied to the trivial 2-part gives zero
  if (info.dim != n - (n / static_cast<int>(d.sylow2.size())))
    throw std::runtime_error("radical dimension mismatch");
  return info;
}

ProjectiveCover projective_cover(const FiniteGroupTable& G, const Ring& R, const BlockIdempotent& e) {
  int n = G.order();
  MMat cols(n, n);
  for (int g = 0; g < n; ++g) {
    // column g: g * e
    for (int h = 0; h < n; ++h) {
      if (e.elem[static_cast<size_t>(h)] == 0) continue;
      int gh = G.mul(g, h);
      cols.at(gh, g) = R.add(cols.at(gh, g), e.elem[static_cast<size_t>(h)]);
    }
  }
  ProjectiveCover pc{e, saturated_column_basis(R, cols), {}};
  GModule reg = regular_module(G, R);
  pc.mod = submodule(reg, pc.basis, "P(" + e.label + ")");
  return pc;
}

std::vector<ProjectiveCover> simples_and_projectives(const FiniteGroupTable& G, const Ring& R) {
  std::vector<ProjectiveCover> out;
  for (const auto& e : block_idempotents(G, R)) out.push_back(projective_cover(G, R, e));
  // certificate: the head of each cover is its simple
  TwoLocalData d = two_local_data(G);
  for (const auto& pc : out) {
    // rad of the cover: (u-1)-image columns
    MMat rad(pc.mod.rank, static_cast<int>(d.sylow2.size()) * pc.mod.rank);
    int col = 0;
    for (int u : d.sylow2) {
      const MMat& au = pc.mod.action(u);
      for (int j = 0; j < pc.mod.rank; ++j) {
        for (int i = 0; i < pc.mod.rank; ++i)
          rad.at(i, col) = R.sub(au.at(i, j), i == j ? R.one() : R.zero());
        ++col;
      }
    }
    int head_dim = pc.mod.rank - residue_rank(R, rad);
    if (head_dim != pc.block.simple_dim)
      throw std::runtime_error("projective cover head does not match its simple");
  }
  return out;
}

// ---------------- Loewy series ----------------

std::vector<std::vector<int>> loewy_series(const GModule& m) {
  if (m.ring.kind != Ring::Kind::GF2e) throw std::domain_error("loewy_series needs field coefficients");
  const Ring& R = m.ring;
  const FiniteGroupTable& G = *m.G;
  TwoLocalData d = two_local_data(G);
  auto blocks = block_idempotents(G, R);
  // idempotent actions on the module
  std::vector<MMat> eact;
  for (const auto& b : blocks) {
    MMat e(m.rank, m.rank);
    for (int g = 0; g < G.order(); ++g) {
      uint32_t c = b.elem[static_cast<size_t>(g)];
      if (c == 0) continue;
      const MMat& ag = m.action(g);
      for (int i = 0; i < m.rank; ++i)
        for (int j = 0; j < m.rank; ++j) e.at(i, j) = R.add(e.at(i, j), R.mul(c, ag.at(i, j)));
    }
    eact.push_back(std::move(e));
  }

  auto layer_mult = [&](const MMat& vt, const MMat& vt1) {
    std::vector<int> mult;
    int base = residue_rank(R, vt1);
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
      MMat ei_vt = mmat_mul(R, eact[bi], vt);
      MMat stacked(m.rank, ei_vt.cols + vt1.cols);
      for (int i = 0; i < m.rank; ++i) {
        for (int j = 0; j < ei_vt.cols; ++j) stacked.at(i, j) = ei_vt.at(i, j);
        for (int j = 0; j < vt1.cols; ++j) stacked.at(i, ei_vt.cols + j) = vt1.at(i, j);
      }
      int dim = residue_rank(R, stacked) - base;
      if (dim % blocks[bi].simple_dim != 0) throw std::runtime_error("layer multiplicity not integral");
      mult.push_back(dim / blocks[bi].simple_dim);
    }
    return mult;
  };

  std::vector<std::vector<int>> layers;
  MMat vt = MMat::identity(m.rank);
  while (vt.cols > 0) {
    // J * V_t
    MMat prod(m.rank, static_cast<int>(d.sylow2.size()) * vt.cols);
    int col = 0;
    for (int u : d.sylow2) {
      const MMat& au = m.action(u);
      MMat au_v = mmat_mul(R, au, vt);
      for (int j = 0; j < vt.cols; ++j) {
        for (int i = 0; i < m.rank; ++i) prod.at(i, col) = R.sub(au_v.at(i, j), vt.at(i, j));
        ++col;
      }
    }
    MMat vt1 = saturated_column_basis(R, prod);
    layers.push_back(layer_mult(vt, vt1));
    if (vt1.cols == 0) break;
    vt = vt1;
  }
  return layers;
}

// ---------------- minimal resolution ----------------

MinimalResolution::MinimalResolution(const FiniteGroupTable& G, const Ring& R) : G_(&G), R_(R) { build(); }

void MinimalResolution::build() {
  const FiniteGroupTable& G = *G_;
  const Ring& R = R_;
  int n = G.order();
  TwoLocalData local = two_local_data(G);
  auto blocks = block_idempotents(G, R);
  e0_ = blocks[0].elem;

  regular_ = regular_module(G, R);
  // Q0 = A e0
  {
    MMat cols(n, n);
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h) {
        if (e0_[static_cast<size_t>(h)] == 0) continue;
        int gh = G.mul(g, h);
        cols.at(gh, g) = R.add(cols.at(gh, g), e0_[static_cast<size_t>(h)]);
      }
    q0_basis_ = saturated_column_basis(R, cols);
  }
  q0_ = submodule(regular_, q0_basis_, "Q0");

  // augmentation on Q0 coordinates and its kernel K0
  {
    MMat augrow(1, q0_basis_.cols);
    for (int j = 0; j < q0_basis_.cols; ++j) {
      uint32_t s = 0;
      for (int i = 0; i < n; ++i) s = R.add(s, q0_basis_.at(i, j));
      augrow.at(0, j) = s;
    }
    auto ker = SmithSolver(R, augrow).kernel(true);
    k0_rank_ = static_cast<int>(ker.size());
    k0_in_q0_ = MMat(q0_basis_.cols, k0_rank_);
    for (int j = 0; j < k0_rank_; ++j)
      for (int i = 0; i < q0_basis_.cols; ++i) k0_in_q0_.at(i, j) = ker[static_cast<size_t>(j)][static_cast<size_t>(i)];
  }
  k0_in_alg_ = mmat_mul(R, q0_basis_, k0_in_q0_);
  k0_mod_ = submodule(q0_, k0_in_q0_, "K0");

  // radical columns of K0 (in K0 coordinates): (u-1) K0 for u in Syl_2, plus 2 K0
  MMat radk(k0_rank_, (static_cast<int>(local.sylow2.size()) + 1) * k0_rank_);
  {
    int col = 0;
    for (int u : local.sylow2) {
      const MMat& au = k0_mod_.action(u);
      for (int j = 0; j < k0_rank_; ++j) {
        for (int i = 0; i < k0_rank_; ++i) radk.at(i, col) = R.sub(au.at(i, j), i == j ? R.one() : R.zero());
        ++col;
      }
    }
    if (R.kind == Ring::Kind::Z2k) {
      for (int j = 0; j < k0_rank_; ++j) {
        radk.at(j, col) = R.two_pow(1);
        ++col;
      }
    }
  }
  int rad_rank = residue_rank(R, radk);

  // head multiplicities per block
  std::vector<int> mult(blocks.size(), 0);
  std::vector<MMat> eact;
  for (const auto& b : blocks) {
    MMat e(k0_rank_, k0_rank_);
    for (int g = 0; g < n; ++g) {
      uint32_t c = b.elem[static_cast<size_t>(g)];
      if (c == 0) continue;
      const MMat& ag = k0_mod_.action(g);
      for (int i = 0; i < k0_rank_; ++i)
        for (int j = 0; j < k0_rank_; ++j) e.at(i, j) = R.add(e.at(i, j), R.mul(c, ag.at(i, j)));
    }
    eact.push_back(std::move(e));
  }
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    MMat stacked(k0_rank_, k0_rank_ + radk.cols);
    for (int i = 0; i < k0_rank_; ++i) {
      for (int j = 0; j < k0_rank_; ++j) stacked.at(i, j) = eact[bi].at(i, j);
      for (int j = 0; j < radk.cols; ++j) stacked.at(i, k0_rank_ + j) = radk.at(i, j);
    }
    int dim = residue_rank(R, stacked) - rad_rank;
    if (dim % blocks[bi].simple_dim != 0) throw std::runtime_error("head multiplicity not integral");
    mult[bi] = dim / blocks[bi].simple_dim;
  }

  // Q1 = direct sum of covers; choose generator images in e_i K0
  SmithSolver k0solver(R, k0_in_alg_);
  struct BlockCopy {
    MMat cover_basis;               // |G| x r_i, algebra coordinates
    GModule cover_mod;
    std::vector<uint32_t> gen_alg;  // v in e_i K0, algebra coordinates
  };
  std::vector<BlockCopy> copies;
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    if (mult[bi] == 0) continue;
    ProjectiveCover pc = projective_cover(G, R, blocks[bi]);
    // candidates e_i * (K0 basis col), greedy by head contribution
    MMat accepted_heads(k0_rank_, radk.cols + mult[bi]);
    for (int i = 0; i < k0_rank_; ++i)
      for (int j = 0; j < radk.cols; ++j) accepted_heads.at(i, j) = radk.at(i, j);
    int acc_cols = radk.cols;
    int acc_rank = rad_rank;
    std::vector<std::vector<uint32_t>> gens;
    for (int j = 0; j < k0_rank_ && static_cast<int>(gens.size()) < mult[bi]; ++j) {
      std::vector<uint32_t> kcol(static_cast<size_t>(n));
      for (int i = 0; i < n; ++i) kcol[static_cast<size_t>(i)] = k0_in_alg_.at(i, j);
      std::vector<uint32_t> v = algebra_mul(G, R, blocks[bi].elem, kcol);
      // express in K0 coordinates for the rank test
      std::vector<uint32_t> vk;
      if (!k0solver.solve(v, vk)) throw std::runtime_error("e_i K0 left K0");
      MMat test(k0_rank_, acc_cols + 1);
      for (int i = 0; i < k0_rank_; ++i) {
        for (int j2 = 0; j2 < acc_cols; ++j2) test.at(i, j2) = accepted_heads.at(i, j2);
        test.at(i, acc_cols) = vk[static_cast<size_t>(i)];
      }
      int nr = residue_rank(R, test);
      if (nr > acc_rank) {
        for (int i = 0; i < k0_rank_; ++i) accepted_heads.at(i, acc_cols) = vk[static_cast<size_t>(i)];
        ++acc_cols;
        acc_rank = nr;
        gens.push_back(v);
      }
    }
    if (static_cast<int>(gens.size()) != mult[bi])
      throw std::runtime_error("could not realize the head multiplicity with generators");
    for (auto& v : gens) {
      BlockCopy bc;
      bc.cover_basis = pc.basis;
      bc.cover_mod = pc.mod;
      bc.gen_alg = v;
      copies.push_back(std::move(bc));
    }
  }

  q1_rank_ = 0;
  for (const auto& bc : copies) q1_rank_ += bc.cover_basis.cols;

  // phi columns: beta * v (right multiplication in the group algebra)
  phi_ = MMat(k0_rank_, q1_rank_);
  {
    int col = 0;
    for (const auto& bc : copies) {
      for (int j = 0; j < bc.cover_basis.cols; ++j) {
        std::vector<uint32_t> beta(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) beta[static_cast<size_t>(i)] = bc.cover_basis.at(i, j);
        std::vector<uint32_t> img = algebra_mul(G, R, beta, bc.gen_alg);
        std::vector<uint32_t> k0c;
        if (!k0solver.solve(img, k0c)) throw std::runtime_error("phi image left K0");
        for (int i = 0; i < k0_rank_; ++i) phi_.at(i, col) = k0c[static_cast<size_t>(i)];
        ++col;
      }
    }
  }

  // Q1 module: block diagonal
  {
    q1_mod_.G = G_;
    q1_mod_.ring = R;
    q1_mod_.rank = q1_rank_;
    q1_mod_.provenance = "Q1";
    for (int g = 0; g < n; ++g) {
      MMat a(q1_rank_, q1_rank_);
      int off = 0;
      for (const auto& bc : copies) {
        const MMat& bact = bc.cover_mod.action(g);
        for (int i = 0; i < bact.rows; ++i)
          for (int j = 0; j < bact.cols; ++j) a.at(off + i, off + j) = bact.at(i, j);
        off += bact.cols;
      }
      q1_mod_.act.push_back(std::move(a));
    }
  }

  // surjectivity (Nakayama): image + rad = K0 over the residue field
  {
    MMat stacked(k0_rank_, q1_rank_ + radk.cols);
    for (int i = 0; i < k0_rank_; ++i) {
      for (int j = 0; j < q1_rank_; ++j) stacked.at(i, j) = phi_.at(i, j);
      for (int j = 0; j < radk.cols; ++j) stacked.at(i, q1_rank_ + j) = radk.at(i, j);
    }
    if (residue_rank(R, stacked) != k0_rank_) throw std::runtime_error("cover map is not surjective");
  }

  // Omega_2 = ker(phi), free and saturated
  auto ker = SmithSolver(R, phi_).kernel(true);
  omega_in_q1_ = MMat(q1_rank_, static_cast<int>(ker.size()));
  for (size_t j = 0; j < ker.size(); ++j)
    for (int i = 0; i < q1_rank_; ++i) omega_in_q1_.at(i, static_cast<int>(j)) = ker[j][static_cast<size_t>(i)];
  omega_ = submodule(q1_mod_, omega_in_q1_, "Omega2");

  // minimality certificate: Omega_2 inside rad(Q1)
  {
    MMat radq1(q1_rank_, (static_cast<int>(local.sylow2.size()) + 1) * q1_rank_);
    int col = 0;
    for (int u : local.sylow2) {
      const MMat& au = q1_mod_.action(u);
      for (int j = 0; j < q1_rank_; ++j) {
        for (int i = 0; i < q1_rank_; ++i) radq1.at(i, col) = R.sub(au.at(i, j), i == j ? R.one() : R.zero());
        ++col;
      }
    }
    if (R.kind == Ring::Kind::Z2k)
      for (int j = 0; j < q1_rank_; ++j) {
        radq1.at(j, col) = R.two_pow(1);
        ++col;
      }
    SmithSolver radsolver(R, radq1);
    minimality_ok_ = true;
    for (int j = 0; j < omega_in_q1_.cols; ++j) {
      std::vector<uint32_t> w(static_cast<size_t>(q1_rank_));
      for (int i = 0; i < q1_rank_; ++i) w[static_cast<size_t>(i)] = omega_in_q1_.at(i, j);
      std::vector<uint32_t> x;
      if (!radsolver.solve(w, x)) {
        minimality_ok_ = false;
        break;
      }
    }
    if (!minimality_ok_) throw std::runtime_error("resolution is not minimal (projective summand leaked)");
  }
}

void MinimalResolution::build_cocycle() {
  const FiniteGroupTable& G = *G_;
  const Ring& R = R_;
  int n = G.order();
  SmithSolver k0solver(R, k0_in_alg_);
  SmithSolver phisolver(R, phi_);
  SmithSolver omegasolver(R, omega_in_q1_);

  // f0: [] -> e0 in Q0; f1[g] solves phi(f1[g]) = g e0 - e0 (in K0 coords)
  std::vector<std::vector<uint32_t>> f1(static_cast<size_t>(n));
  for (int g = 0; g < n; ++g) {
    std::vector<uint32_t> rhs_alg(static_cast<size_t>(n), 0);
    for (int h = 0; h < n; ++h) {
      uint32_t c = e0_[static_cast<size_t>(h)];
      if (c == 0) continue;
      int gh = G.mul(g, h);
      rhs_alg[static_cast<size_t>(gh)] = R.add(rhs_alg[static_cast<size_t>(gh)], c);
      rhs_alg[static_cast<size_t>(h)] = R.sub(rhs_alg[static_cast<size_t>(h)], c);
    }
    std::vector<uint32_t> rhs_k0;
    if (!k0solver.solve(rhs_alg, rhs_k0)) throw std::runtime_error("g e0 - e0 left K0");
    std::vector<uint32_t> u;
    if (!phisolver.solve(rhs_k0, u))
      throw std::runtime_error("chain-map lifting system inconsistent (projectivity violated)");
    f1[static_cast<size_t>(g)] = std::move(u);
  }

  cocycle_.assign(static_cast<size_t>(n) * n, {});
  for (int g = 0; g < n; ++g) {
    const MMat& ag = q1_mod_.action(g);
    for (int h = 0; h < n; ++h) {
      // w = g f1[h] - f1[gh] + f1[g], a cycle, hence in Omega
      std::vector<uint32_t> w = mmat_apply(R, ag, f1[static_cast<size_t>(h)]);
      int gh = G.mul(g, h);
      for (int i = 0; i < q1_rank_; ++i) {
        w[static_cast<size_t>(i)] = R.sub(w[static_cast<size_t>(i)], f1[static_cast<size_t>(gh)][static_cast<size_t>(i)]);
        w[static_cast<size_t>(i)] = R.add(w[static_cast<size_t>(i)], f1[static_cast<size_t>(g)][static_cast<size_t>(i)]);
      }
      std::vector<uint32_t> c;
      if (!omegasolver.solve(w, c)) throw std::runtime_error("cocycle value left Omega");
      cocycle_[static_cast<size_t>(g) * n + h] = std::move(c);
    }
  }

  // normalization and the cocycle identity, exhaustively
  int id = G.identity();
  for (int g = 0; g < n; ++g) {
    for (uint32_t x : cocycle_[static_cast<size_t>(id) * n + g]) {
      if (x != 0) throw std::runtime_error("cocycle not normalized");
    }
    for (uint32_t x : cocycle_[static_cast<size_t>(g) * n + id]) {
      if (x != 0) throw std::runtime_error("cocycle not normalized");
    }
  }
  int r = omega_.rank;
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int l = 0; l < n; ++l) {
        std::vector<uint32_t> lhs = mmat_apply(R, omega_.action(g), cocycle_[static_cast<size_t>(h) * n + l]);
        const auto& c_ghl = cocycle_[static_cast<size_t>(G.mul(g, h)) * n + l];
        const auto& c_ghl2 = cocycle_[static_cast<size_t>(g) * n + G.mul(h, l)];
        const auto& c_gh = cocycle_[static_cast<size_t>(g) * n + h];
        for (int i = 0; i < r; ++i) {
          uint32_t v = lhs[static_cast<size_t>(i)];
          v = R.sub(v, c_ghl[static_cast<size_t>(i)]);
          v = R.add(v, c_ghl2[static_cast<size_t>(i)]);
          v = R.sub(v, c_gh[static_cast<size_t>(i)]);
          if (v != 0) throw std::runtime_error("cocycle identity failed");
        }
      }
  cocycle_built_ = true;
}

const std::vector<std::vector<uint32_t>>& MinimalResolution::cocycle() {
  if (!cocycle_built_) build_cocycle();
  return cocycle_;
}

std::vector<uint32_t> MinimalResolution::cocycle_at(int g, int h) const {
  return cocycle_[static_cast<size_t>(g) * G_->order() + h];
}

// ---------------- sigma split ----------------

SigmaSplit sigma_split(const GModule& padded, int sigma_elem, int target_k) {
  const Ring& R = padded.ring;
  if (R.kind != Ring::Kind::Z2k || R.param < target_k + 2)
    throw std::domain_error("sigma_split needs Z/2^k coefficients with two guard digits");
  const MMat& S = padded.action(sigma_elem);
  // sigma must be an involution on the module
  {
    MMat s2 = mmat_mul(R, S, S);
    if (s2.a != MMat::identity(padded.rank).a) throw std::domain_error("sigma does not act as an involution");
  }
  MMat smi(padded.rank, padded.rank);
  for (int i = 0; i < padded.rank; ++i)
    for (int j = 0; j < padded.rank; ++j) smi.at(i, j) = R.sub(S.at(i, j), i == j ? R.one() : R.zero());
  SmithSolver sol(R, smi);
  SigmaSplit out;
  out.target_k = target_k;
  std::vector<int> plus_cols;
  for (int j = 0; j < padded.rank; ++j) {
    int v = sol.divisor_vals[static_cast<size_t>(j)];
    if (v == R.val_cap()) {
      plus_cols.push_back(j);
    } else if (v <= 1) {
      ++out.rank_minus;
    } else {
      throw std::runtime_error("sigma - 1 has an unexpected elementary divisor 2^" + std::to_string(v));
    }
  }
  out.rank_plus = static_cast<int>(plus_cols.size());
  out.plus_basis = MMat(padded.rank, out.rank_plus);
  for (size_t j = 0; j < plus_cols.size(); ++j)
    for (int i = 0; i < padded.rank; ++i) out.plus_basis.at(i, static_cast<int>(j)) = sol.V.at(i, plus_cols[j]);

  // complete to a basis with unit pivots
  struct Piv {
    int row;
    std::vector<uint32_t> col;
  };
  std::vector<Piv> reduced;
  std::vector<std::vector<uint32_t>> full_cols;
  auto try_add = [&](std::vector<uint32_t> v) {
    std::vector<uint32_t> orig = v;
    for (const auto& p : reduced) {
      uint32_t c = v[static_cast<size_t>(p.row)];
      if (c == 0) continue;
      for (size_t i = 0; i < v.size(); ++i) v[i] = R.sub(v[i], R.mul(c, p.col[i]));
    }
    int prow = -1;
    for (size_t i = 0; i < v.size(); ++i)
      if (R.is_unit(v[i])) {
        prow = static_cast<int>(i);
        break;
      }
    if (prow < 0) return false;
    uint32_t pinv = R.inv(v[static_cast<size_t>(prow)]);
    for (auto& x : v) x = R.mul(x, pinv);
    reduced.push_back({prow, std::move(v)});
    full_cols.push_back(std::move(orig));
    return true;
  };
  for (int j = 0; j < out.rank_plus; ++j) {
    std::vector<uint32_t> v(static_cast<size_t>(padded.rank));
    for (int i = 0; i < padded.rank; ++i) v[static_cast<size_t>(i)] = out.plus_basis.at(i, j);
    if (!try_add(std::move(v))) throw std::runtime_error("plus part is not saturated");
  }
  std::vector<int> comp_cols;
  for (int j = 0; j < padded.rank && static_cast<int>(full_cols.size()) < padded.rank; ++j) {
    std::vector<uint32_t> v(static_cast<size_t>(padded.rank), 0);
    v[static_cast<size_t>(j)] = 1;
    if (try_add(std::move(v))) comp_cols.push_back(j);
  }
  if (static_cast<int>(full_cols.size()) != padded.rank) throw std::runtime_error("basis completion failed");
  out.rank_minus = padded.rank - out.rank_plus;

  // full-basis solver: quotient coordinates are the complement components
  MMat full(padded.rank, padded.rank);
  for (int j = 0; j < padded.rank; ++j)
    for (int i = 0; i < padded.rank; ++i) full.at(i, j) = full_cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
  SmithSolver fullsolver(R, full);
  out.minus_proj = MMat(out.rank_minus, padded.rank);
  for (int j = 0; j < padded.rank; ++j) {
    std::vector<uint32_t> e(static_cast<size_t>(padded.rank), 0);
    e[static_cast<size_t>(j)] = 1;
    std::vector<uint32_t> x;
    if (!fullsolver.solve(e, x)) throw std::runtime_error("full basis solve failed");
    for (int i = 0; i < out.rank_minus; ++i)
      out.minus_proj.at(i, j) = x[static_cast<size_t>(out.rank_plus + i)];
  }

  // quotient action at the padded level, then reduce to the target level
  Ring Rt = Ring::z2k(target_k);
  GModule minus;
  minus.G = padded.G;
  minus.ring = Rt;
  minus.rank = out.rank_minus;
  minus.provenance = padded.provenance + "_minus";
  for (int g = 0; g < padded.G->order(); ++g) {
    MMat comp(padded.rank, out.rank_minus);
    for (int j = 0; j < out.rank_minus; ++j)
      for (int i = 0; i < padded.rank; ++i)
        comp.at(i, j) = full_cols[static_cast<size_t>(out.rank_plus + j)][static_cast<size_t>(i)];
    MMat img = mmat_mul(R, padded.action(g), comp);
    MMat q = mmat_mul(R, out.minus_proj, img);
    for (auto& x : q.a) x &= Rt.mask;
    minus.act.push_back(std::move(q));
  }
  out.m_minus = std::move(minus);

  // the plus part as a module, reduced to the target level
  GModule plus_padded = submodule(padded, out.plus_basis, padded.provenance + "_plus");
  out.m_plus = reduce_mod(plus_padded, target_k);

  // sigma acts as -1 on the minus part, exactly at the target level
  {
    const MMat& sm = out.m_minus.action(sigma_elem);
    for (int i = 0; i < out.rank_minus; ++i)
      for (int j = 0; j < out.rank_minus; ++j) {
        uint32_t want = (i == j) ? Rt.neg(Rt.one()) : 0u;
        if (sm.at(i, j) != want) throw std::runtime_error("sigma is not -1 on the minus part");
      }
  }
  if (!out.m_minus.action_consistent()) throw std::runtime_error("minus-part action inconsistent");
  return out;
}

Z2LatticeDecomposition z2_lattice_decomposition(const GModule& padded, int sigma_elem) {
  const Ring& R = padded.ring;
  const MMat& S = padded.action(sigma_elem);
  MMat smi(padded.rank, padded.rank);
  for (int i = 0; i < padded.rank; ++i)
    for (int j = 0; j < padded.rank; ++j) smi.at(i, j) = R.sub(S.at(i, j), i == j ? R.one() : R.zero());
  auto vals = divisor_valuations(R, smi);
  Z2LatticeDecomposition d;
  int zeros = 0;
  for (int v : vals) {
    if (v == 0) ++d.c;
    else if (v == 1) ++d.b;
    else if (v == R.val_cap()) ++zeros;
    else throw std::runtime_error("unexpected divisor in the Z[C2]-restriction");
  }
  d.a = zeros - d.c;
  return d;
}

// ---------------- rank identities ----------------

RankIdentitiesReport rank_identities_check(const FiniteGroupTable& G, int k) {
  if (G.sigma() < 0) throw std::domain_error("rank identities need a central involution");
  RankIdentitiesReport rep;
  MinimalResolution resf(G, Ring::gf(1));
  rep.dim_f2 = resf.omega_rank();
  MinimalResolution resz(G, Ring::z2k(k + 2));
  rep.rank_z = resz.omega_rank();
  rep.rk_equal = (rep.rank_z == rep.dim_f2);
  SigmaSplit split = sigma_split(resz.omega(), G.sigma(), k);
  rep.rank_minus = split.rank_minus;
  rep.rk2b = (2 * rep.rank_minus == rep.rank_z - 1);
  auto dec = z2_lattice_decomposition(resz.omega(), G.sigma());
  rep.res_decomposition = (dec.a == 1 && dec.b == 0 && dec.c == rep.rank_minus);

  auto fr = G.frattini_subgroup();
  bool sigma_in_frattini = std::binary_search(fr.begin(), fr.end(), G.sigma());
  if (sigma_in_frattini) {
    std::vector<int> proj;
    FiniteGroupTable gbar = G.quotient(G.closure({G.sigma()}), &proj);
    MinimalResolution resbar(gbar, Ring::gf(1));
    rep.dim_f2_bar = resbar.omega_rank();
    rep.m2_identity = (2 * (rep.dim_f2_bar - 1) == rep.dim_f2 - 1);
  }

  int n = G.order();
  bool two_group = (n & (n - 1)) == 0;
  rep.d_g = subgroup_analysis(G).d_g;
  if (two_group) {
    rep.rk1 = (rep.rank_z == (rep.d_g - 1) * n + 1);
    rep.minus_rank_formula = (rep.rank_minus == (rep.d_g - 1) * n / 2);
  }
  return rep;
}

// ---------------- coboundary solver ----------------

bool CocycleTable::verify_identity() const {
  int n = G->order();
  const Ring& R = mod.ring;
  int r = mod.rank;
  int id = G->identity();
  for (int g = 0; g < n; ++g) {
    for (uint32_t x : c[static_cast<size_t>(id) * n + g])
      if (x != 0) return false;
    for (uint32_t x : c[static_cast<size_t>(g) * n + id])
      if (x != 0) return false;
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int l = 0; l < n; ++l) {
        auto lhs = mmat_apply(R, mod.action(g), c[static_cast<size_t>(h) * n + l]);
        const auto& c1 = c[static_cast<size_t>(G->mul(g, h)) * n + l];
        const auto& c2 = c[static_cast<size_t>(g) * n + G->mul(h, l)];
        const auto& c3 = c[static_cast<size_t>(g) * n + h];
        for (int i = 0; i < r; ++i) {
          uint32_t v = R.sub(lhs[static_cast<size_t>(i)], c1[static_cast<size_t>(i)]);
          v = R.add(v, c2[static_cast<size_t>(i)]);
          v = R.sub(v, c3[static_cast<size_t>(i)]);
          if (v != 0) return false;
        }
      }
  return true;
}

std::optional<std::vector<std::vector<uint32_t>>> coboundary_solve(const CocycleTable& t) {
  const FiniteGroupTable& G = *t.G;
  const Ring& R = t.mod.ring;
  int n = G.order();
  int r = t.mod.rank;
  int id = G.identity();
  // unknowns: f(g) for g != identity, coordinates flattened
  std::vector<int> gidx(static_cast<size_t>(n), -1);
  int nv = 0;
  for (int g = 0; g < n; ++g)
    if (g != id) gidx[static_cast<size_t>(g)] = nv++;
  MMat sys(n * n * r, nv * r);
  std::vector<uint32_t> rhs(static_cast<size_t>(n) * n * r, 0);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int row0 = (g * n + h) * r;
      const auto& cv = t.c[static_cast<size_t>(g) * n + h];
      for (int i = 0; i < r; ++i) rhs[static_cast<size_t>(row0 + i)] = cv[static_cast<size_t>(i)];
      // g f(h) - f(gh) + f(g)
      if (h != id) {
        const MMat& ag = t.mod.action(g);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            sys.at(row0 + i, gidx[static_cast<size_t>(h)] * r + j) =
                R.add(sys.at(row0 + i, gidx[static_cast<size_t>(h)] * r + j), ag.at(i, j));
      }
      int gh = G.mul(g, h);
      if (gh != id)
        for (int i = 0; i < r; ++i)
          sys.at(row0 + i, gidx[static_cast<size_t>(gh)] * r + i) =
              R.sub(sys.at(row0 + i, gidx[static_cast<size_t>(gh)] * r + i), R.one());
      if (g != id)
        for (int i = 0; i < r; ++i)
          sys.at(row0 + i, gidx[static_cast<size_t>(g)] * r + i) =
              R.add(sys.at(row0 + i, gidx[static_cast<size_t>(g)] * r + i), R.one());
    }
  SmithSolver solver(R, std::move(sys));
  std::vector<uint32_t> x;
  if (!solver.solve(rhs, x)) return std::nullopt;
  std::vector<std::vector<uint32_t>> f(static_cast<size_t>(n), std::vector<uint32_t>(static_cast<size_t>(r), 0));
  for (int g = 0; g < n; ++g)
    if (g != id)
      for (int i = 0; i < r; ++i) f[static_cast<size_t>(g)][static_cast<size_t>(i)] = x[static_cast<size_t>(gidx[static_cast<size_t>(g)] * r + i)];
  return f;
}

// ---------------- Omega_circ and the fixed point property ----------------

OmegaCirc omega_circ(const FiniteGroupTable& G) {
  if (G.sigma() < 0) throw std::domain_error("omega_circ needs a central involution");
  auto fr = G.frattini_subgroup();
  if (!std::binary_search(fr.begin(), fr.end(), G.sigma()))
    throw std::domain_error("omega_circ requires sigma in the Frattini subgroup");
  OmegaCirc out;
  std::vector<int> proj;
  out.gbar = std::make_shared<FiniteGroupTable>(G.quotient(G.closure({G.sigma()}), &proj));
  out.proj = proj;
  Ring R = Ring::gf(1);
  MinimalResolution res(*out.gbar, R);
  res.cocycle();
  out.omega_bar = res.omega();
  int nbar = out.gbar->order();
  int r = out.omega_bar.rank;

  // co-invariants: quotient by the span of (g - 1) Omega
  MMat w(r, nbar * r);
  int col = 0;
  for (int g = 0; g < nbar; ++g) {
    const MMat& ag = out.omega_bar.action(g);
    for (int j = 0; j < r; ++j) {
      for (int i = 0; i < r; ++i) w.at(i, col) = R.sub(ag.at(i, j), i == j ? R.one() : R.zero());
      ++col;
    }
  }
  MMat wb = saturated_column_basis(R, w);
  int t = r - wb.cols;
  if (t < 1) throw std::runtime_error("no trivial-quotient hyperplane exists");

  // functional coordinates: complete W to a basis, coefficients of e_j on the
  // complement part
  struct Piv {
    int row;
    std::vector<uint32_t> col;
  };
  std::vector<Piv> reduced;
  std::vector<std::vector<uint32_t>> full_cols;
  auto try_add = [&](std::vector<uint32_t> v) {
    std::vector<uint32_t> orig = v;
    for (const auto& p : reduced) {
      uint32_t cc = v[static_cast<size_t>(p.row)];
      if (cc == 0) continue;
      for (size_t i = 0; i < v.size(); ++i) v[i] = R.sub(v[i], R.mul(cc, p.col[i]));
    }
    int prow = -1;
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) {
        prow = static_cast<int>(i);
        break;
      }
    if (prow < 0) return false;
    uint32_t pinv = R.inv(v[static_cast<size_t>(prow)]);
    for (auto& x : v) x = R.mul(x, pinv);
    reduced.push_back({prow, std::move(v)});
    full_cols.push_back(std::move(orig));
    return true;
  };
  for (int j = 0; j < wb.cols; ++j) {
    std::vector<uint32_t> v(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) v[static_cast<size_t>(i)] = wb.at(i, j);
    try_add(std::move(v));
  }
  std::vector<int> comp;
  for (int j = 0; j < r && static_cast<int>(full_cols.size()) < r; ++j) {
    std::vector<uint32_t> v(static_cast<size_t>(r), 0);
    v[static_cast<size_t>(j)] = 1;
    if (try_add(std::move(v))) comp.push_back(j);
  }
  MMat full(r, r);
  for (int j = 0; j < r; ++j)
    for (int i = 0; i < r; ++i) full.at(i, j) = full_cols[static_cast<size_t>(j)][static_cast<size_t>(i)];
  SmithSolver fullsolver(R, full);
  MMat pc(t, r); // coinvariant coordinates of each basis vector
  for (int j = 0; j < r; ++j) {
    std::vector<uint32_t> e(static_cast<size_t>(r), 0);
    e[static_cast<size_t>(j)] = 1;
    std::vector<uint32_t> x;
    fullsolver.solve(e, x);
    for (int i = 0; i < t; ++i) pc.at(i, j) = x[static_cast<size_t>(wb.cols + i)];
  }

  // extension class of G -> Gbar as an F_2 cocycle via the minimal section
  std::vector<int> section(static_cast<size_t>(nbar), -1);
  for (int g = 0; g < G.order(); ++g) {
    int img = proj[static_cast<size_t>(g)];
    if (section[static_cast<size_t>(img)] < 0 || g < section[static_cast<size_t>(img)])
      section[static_cast<size_t>(img)] = g;
  }
  auto class_cocycle = [&](int gb, int hb) -> uint32_t {
    int prod = G.mul(section[static_cast<size_t>(gb)], section[static_cast<size_t>(hb)]);
    int rep = section[static_cast<size_t>(proj[static_cast<size_t>(prod)])];
    return prod == rep ? 0u : 1u;
  };

  // try the 2^t - 1 functionals
  for (uint32_t lam = 1; lam < (1u << t); ++lam) {
    CocycleTable ct;
    ct.G = out.gbar.get();
    ct.mod = trivial_module(*out.gbar, R);
    ct.c.assign(static_cast<size_t>(nbar) * nbar, std::vector<uint32_t>(1, 0));
    for (int g = 0; g < nbar; ++g)
      for (int h = 0; h < nbar; ++h) {
        auto cu = res.cocycle_at(g, h);
        uint32_t v = 0;
        for (int i = 0; i < t; ++i)
          if (lam & (1u << i)) {
            uint32_t dot = 0;
            for (int j = 0; j < r; ++j) dot = R.add(dot, R.mul(pc.at(i, j), cu[static_cast<size_t>(j)]));
            v = R.add(v, dot);
          }
        v = R.sub(v, class_cocycle(g, h));
        ct.c[static_cast<size_t>(g) * nbar + h][0] = v;
      }
    if (coboundary_solve(ct).has_value()) {
      // the hyperplane: kernel of the functional lambda . pc
      MMat fun(1, r);
      for (int j = 0; j < r; ++j) {
        uint32_t v = 0;
        for (int i = 0; i < t; ++i)
          if (lam & (1u << i)) v = R.add(v, pc.at(i, j));
        fun.at(0, j) = v;
      }
      auto ker = SmithSolver(R, fun).kernel(false);
      MMat kb(r, static_cast<int>(ker.size()));
      for (size_t j = 0; j < ker.size(); ++j)
        for (int i = 0; i < r; ++i) kb.at(i, static_cast<int>(j)) = ker[j][static_cast<size_t>(i)];
      out.candidate_bases.push_back(kb);
      out.candidates.push_back(submodule(out.omega_bar, kb, "Omega_circ"));
    }
  }
  if (out.candidates.empty())
    throw std::runtime_error("no hyperplane classifies the central extension (integrity violation)");
  return out;
}

bool fixed_point_property_check(const FiniteGroupTable& G) {
  OmegaCirc oc = omega_circ(G);
  auto subs = G.all_subgroups();
  for (const auto& cand : oc.candidates) {
    for (const auto& s : subs) {
      if (s.size() % 2 == 0 || s.size() == 1) continue;
      std::vector<int> imgs;
      for (int x : s) imgs.push_back(oc.proj[static_cast<size_t>(x)]);
      std::sort(imgs.begin(), imgs.end());
      imgs.erase(std::unique(imgs.begin(), imgs.end()), imgs.end());
      if (!fixed_points(cand, imgs).empty()) return false;
    }
  }
  return true;
}

std::vector<int> composition_factors_f4(const FiniteGroupTable& gbar, const GModule& m_f2) {
  GModule m4 = extend_scalars(m_f2, Ring::gf(2));
  auto layers = loewy_series(m4);
  auto blocks = block_idempotents(gbar, Ring::gf(2));
  std::vector<int> total(blocks.size(), 0);
  for (const auto& layer : layers)
    for (size_t i = 0; i < layer.size(); ++i) total[i] += layer[i];
  return total;
}

} // namespace cakit
