#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cakit/group_table.hpp"

namespace cakit {

/// Coefficient ring: F_{2^e} (bit-polynomial elements) or Z/2^k.
struct Ring {
  enum class Kind { GF2e, Z2k };
  Kind kind;
  int param; // e or k
  uint32_t modpoly; // GF2e reduction polynomial bits (degree e), unused for Z2k
  uint32_t mask;    // Z2k: 2^k - 1

  static Ring gf(int e);
  static Ring z2k(int k);

  bool operator==(const Ring& o) const { return kind == o.kind && param == o.param; }

  uint32_t zero() const { return 0; }
  uint32_t one() const { return 1; }
  uint32_t add(uint32_t a, uint32_t b) const;
  uint32_t sub(uint32_t a, uint32_t b) const;
  uint32_t neg(uint32_t a) const;
  uint32_t mul(uint32_t a, uint32_t b) const;
  uint32_t inv(uint32_t a) const; // units only
  bool is_unit(uint32_t a) const;
  /// 2-adic valuation for Z/2^k (val_cap for 0); 0/val_cap for GF.
  int val(uint32_t a) const;
  int val_cap() const { return kind == Kind::Z2k ? param : 1; }
  /// The element 2^t (Z2k); for GF: 1 when t == 0 else 0.
  uint32_t two_pow(int t) const;
  uint32_t from_int(long long v) const;
  std::string str(uint32_t a) const;
};

/// Dense matrix over a Ring, row major.
struct MMat {
  int rows = 0, cols = 0;
  std::vector<uint32_t> a;
  MMat() = default;
  MMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
  uint32_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  uint32_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  static MMat identity(int n);
};

MMat mmat_mul(const Ring& R, const MMat& x, const MMat& y);
MMat mmat_add(const Ring& R, const MMat& x, const MMat& y);
std::vector<uint32_t> mmat_apply(const Ring& R, const MMat& m, const std::vector<uint32_t>& v);

/// Smith-style reduction over the chain ring; exposes what the resolution
/// machinery needs: rank over the residue field, elementary-divisor
/// valuations, kernels, and exact solving.
struct SmithSolver {
  Ring R;
  int rows, cols;
  MMat U, V, D; // U * M * V = D, U and V invertible
  std::vector<int> divisor_vals; // valuation of D(i,i), val_cap for zero
  explicit SmithSolver(const Ring& r, MMat m);
  int residue_rank() const; // number of unit divisors
  /// Kernel basis as columns; `saturated_only` asserts divisors in {unit, 0}.
  std::vector<std::vector<uint32_t>> kernel(bool saturated_only) const;
  /// Solve M x = b; returns false when inconsistent.
  bool solve(const std::vector<uint32_t>& b, std::vector<uint32_t>& x) const;
};

int residue_rank(const Ring& R, const MMat& m);
std::vector<int> divisor_valuations(const Ring& R, const MMat& m);

/// Columns of m span a free saturated submodule; returns a basis with unit
/// pivots. Throws when the span is not saturated.
MMat saturated_column_basis(const Ring& R, const MMat& m);

/// Module over R[G]: action matrix per group element on R^rank.
struct GModule {
  const FiniteGroupTable* G = nullptr;
  Ring ring{Ring::Kind::GF2e, 1, 0x2u, 0};
  int rank = 0;
  std::vector<MMat> act;
  std::string provenance;

  const MMat& action(int g) const { return act[static_cast<size_t>(g)]; }
  /// Verify the action matrices respect the multiplication table.
  bool action_consistent() const;
};

GModule trivial_module(const FiniteGroupTable& G, const Ring& R);
GModule trivial_module(FiniteGroupTable&&, const Ring&) = delete; // result keeps a pointer to G
GModule regular_module(const FiniteGroupTable& G, const Ring& R);
GModule regular_module(FiniteGroupTable&&, const Ring&) = delete;
/// Action induced on the span of `basis` (columns, in parent coordinates).
GModule submodule(const GModule& parent, const MMat& basis, const std::string& provenance);
/// Reduce a Z/2^k module to Z/2^j (j <= k).
GModule reduce_mod(const GModule& m, int j);
/// View a GF(2) or 0/1-matrix module over a larger coefficient field.
GModule extend_scalars(const GModule& m, const Ring& target);

/// Simultaneous fixed points of the listed group elements (kernel of h - 1).
std::vector<std::vector<uint32_t>> fixed_points(const GModule& m, const std::vector<int>& elems);

/// 2-local structure of G: the normal Sylow 2-subgroup and a cyclic odd
/// complement. Throws when G is not 2-local or no cyclic complement exists.
struct TwoLocalData {
  std::vector<int> sylow2;
  int odd_order = 1;
  int odd_generator = -1; // group element of order odd_order (identity if 1)
};
TwoLocalData two_local_data(const FiniteGroupTable& G);

/// Block idempotents of the odd part, trivial block first. Over a splitting
/// field all blocks are linear characters; over F_2 / Z_2 the nontrivial
/// characters fuse.
struct BlockIdempotent {
  std::vector<uint32_t> elem; // group-algebra vector
  int simple_dim = 1;
  std::string label;
};
std::vector<BlockIdempotent> block_idempotents(const FiniteGroupTable& G, const Ring& R);

/// Jacobson radical of R[G] for 2-local G: the ideal generated by
/// {u - 1 : u in the Sylow 2-subgroup} (plus 2 for Z/2^k).
struct RadicalInfo {
  MMat basis; // |G| x dim, group-algebra coordinates
  int dim = 0;
  int nilpotency = 0; // least m with J^m = 0 (computed over the residue field)
};
RadicalInfo radical_basis(const FiniteGroupTable& G, const Ring& R);

struct ProjectiveCover {
  BlockIdempotent block;
  MMat basis; // |G| x rank, algebra coordinates
  GModule mod;
};
ProjectiveCover projective_cover(const FiniteGroupTable& G, const Ring& R, const BlockIdempotent& e);
ProjectiveCover projective_cover(FiniteGroupTable&&, const Ring&, const BlockIdempotent&) = delete;
std::vector<ProjectiveCover> simples_and_projectives(const FiniteGroupTable& G, const Ring& R);
std::vector<ProjectiveCover> simples_and_projectives(FiniteGroupTable&&, const Ring&) = delete;

/// Radical filtration layers with the multiplicity of each simple per layer
/// (field coefficients only). Layer entries follow block_idempotents order.
std::vector<std::vector<int>> loewy_series(const GModule& m);

/// Minimal projective resolution of the trivial module, two steps:
///   0 -> Omega_2 -> Q_1 -> Q_0 -> R -> 0,
/// with the comparison cocycle of the extension class available on demand.
class MinimalResolution {
public:
  MinimalResolution(const FiniteGroupTable& G, const Ring& R);
  MinimalResolution(FiniteGroupTable&&, const Ring&) = delete; // keeps a pointer to G

  const FiniteGroupTable& group() const { return *G_; }
  const Ring& ring() const { return R_; }
  int q0_rank() const { return q0_.rank; }
  int k0_rank() const { return k0_rank_; }
  int q1_rank() const { return q1_rank_; }
  int omega_rank() const { return omega_.rank; }
  const GModule& omega() const { return omega_; }
  bool minimality_ok() const { return minimality_ok_; }

  /// c(g,h) in Omega coordinates; built and verified on first use.
  const std::vector<std::vector<uint32_t>>& cocycle();
  std::vector<uint32_t> cocycle_at(int g, int h) const;
  bool cocycle_built() const { return cocycle_built_; }

private:
  const FiniteGroupTable* G_;
  Ring R_;
  GModule regular_;
  GModule q0_;
  MMat q0_basis_;   // Q0 in algebra coordinates
  int k0_rank_ = 0;
  MMat k0_in_q0_;   // K0 basis in Q0 coordinates
  MMat k0_in_alg_;  // K0 basis in algebra coordinates
  GModule k0_mod_;
  int q1_rank_ = 0;
  GModule q1_mod_;
  MMat phi_;        // Q1 -> K0 in (K0 coords) x (Q1 coords)
  GModule omega_;
  MMat omega_in_q1_;
  bool minimality_ok_ = false;
  std::vector<uint32_t> e0_;
  bool cocycle_built_ = false;
  std::vector<std::vector<uint32_t>> cocycle_; // [g*|G|+h] -> omega coords

  void build();
  void build_cocycle();
};

/// Eigenlattice data of a central involution acting on a free Z/2^k module.
/// Computed with two guard digits: pass a module at level k+2 and receive
/// exact level-k output.
struct SigmaSplit {
  int target_k = 0;
  int rank_plus = 0, rank_minus = 0;
  GModule m_minus;  // level k, sigma acts as -1
  GModule m_plus;   // level k
  MMat minus_proj;  // omega coords -> m_minus coords, level k+2 (apply then reduce)
  MMat plus_basis;  // level k+2
};
SigmaSplit sigma_split(const GModule& padded, int sigma_elem, int target_k);

/// Indecomposable multiplicities of the restriction to Z = <sigma> as a
/// Z/2^k[Z]-lattice: trivial^a + sign^b + regular^c, from the elementary
/// divisors of (sigma - 1).
struct Z2LatticeDecomposition {
  int a = 0, b = 0, c = 0;
};
Z2LatticeDecomposition z2_lattice_decomposition(const GModule& padded, int sigma_elem);

struct RankIdentitiesReport {
  int dim_f2 = 0;            // dim Omega_2(G, F_2)
  int rank_z = 0;            // rank Omega_2(G, Z/2^k)
  int rank_minus = 0;
  bool rk_equal = false;     // rank_z == dim_f2
  bool rk2b = false;         // rank_minus == (rank_z - 1)/2
  bool res_decomposition = false; // Res_Z(Omega) = trivial + m * regular
  std::optional<bool> m2_identity; // when sigma in Phi(G)
  int dim_f2_bar = 0;
  std::optional<bool> rk1;   // 2-groups: rank = (d_G - 1)|G| + 1
  std::optional<bool> minus_rank_formula; // 2-groups: (d_G - 1)|G|/2
  int d_g = 0;
};
RankIdentitiesReport rank_identities_check(const FiniteGroupTable& G, int k);

/// Normalized 2-cocycle table with values in a module; plain data shared by
/// the coboundary solver and the extension builder.
struct CocycleTable {
  const FiniteGroupTable* G = nullptr;
  GModule mod;
  std::vector<std::vector<uint32_t>> c; // [g*|G|+h]
  bool verify_identity() const;
};

/// Solve c(g,h) = g f(h) - f(gh) + f(g); returns the splitting f or nothing.
std::optional<std::vector<std::vector<uint32_t>>> coboundary_solve(const CocycleTable& t);

/// The codimension-1 submodule of Omega_2(G/<sigma>, F_2) whose pushout
/// extension classifies G -> G/<sigma>. All matching hyperplanes are
/// returned (one is expected).
struct OmegaCirc {
  std::shared_ptr<FiniteGroupTable> gbar; // owned: the modules point into it
  std::vector<int> proj; // G -> Gbar
  GModule omega_bar;     // Omega_2(Gbar, F_2)
  std::vector<GModule> candidates; // matching hyperplane submodules
  std::vector<MMat> candidate_bases;
};
OmegaCirc omega_circ(const FiniteGroupTable& G);

/// Fixed-point property: (Omega_circ)^H = 0 for all nontrivial odd-order
/// subgroups H of G.
bool fixed_point_property_check(const FiniteGroupTable& G);

/// Composition factor multiplicities of the F_4 scalar extension, in
/// block_idempotents(gbar, F_4) order.
std::vector<int> composition_factors_f4(const FiniteGroupTable& gbar, const GModule& m_f2);

} // namespace cakit
