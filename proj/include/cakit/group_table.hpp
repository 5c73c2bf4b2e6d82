#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cakit {

/// Finite group as a verified multiplication table. Construction checks
/// associativity exhaustively (orders up to 64), identity and inverses.
class FiniteGroupTable {
public:
  FiniteGroupTable(std::vector<std::vector<int>> table, std::vector<int> generators, std::string name);

  int order() const { return n_; }
  int mul(int a, int b) const { return t_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int inv(int a) const { return inv_[static_cast<size_t>(a)]; }
  int identity() const { return id_; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  int elem_order(int a) const;
  bool is_central(int a) const;
  const std::vector<int>& generators() const { return gens_; }
  const std::string& name() const { return name_; }

  /// Recorded central involution (or -1).
  int sigma() const { return sigma_; }
  void set_sigma(int s);
  std::vector<int> central_involutions() const;

  std::vector<int> closure(std::vector<int> gens) const;
  std::vector<std::vector<int>> all_subgroups() const; // sorted element lists
  bool is_subgroup(const std::vector<int>& elems) const;
  bool is_normal(const std::vector<int>& sub) const;
  std::vector<int> frattini_subgroup() const;

  /// Quotient by a normal subgroup; proj (optional) receives the projection
  /// element -> coset index.
  FiniteGroupTable quotient(const std::vector<int>& normal_sub, std::vector<int>* proj = nullptr) const;

  static FiniteGroupTable cyclic(int n);
  static FiniteGroupTable klein4();
  /// Generalized quaternion group of order 2^n (order must be a power of two,
  /// >= 8); sigma = x^{2^{n-2}} is recorded.
  static FiniteGroupTable quaternion(int order);
  static FiniteGroupTable sl2_3();
  static FiniteGroupTable c3_semidirect_v4();
  static FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b);
  /// action[h] = permutation of N giving the automorphism by which H acts.
  static FiniteGroupTable semidirect(const FiniteGroupTable& n, const FiniteGroupTable& h,
                                     const std::vector<std::vector<int>>& action, const std::string& name);
  /// q8, q16, q32, c2, c3, c4, c6, klein4, sl2_3, c3v4
  static FiniteGroupTable by_name(const std::string& name);

private:
  int n_;
  std::vector<std::vector<int>> t_;
  std::vector<int> inv_;
  std::vector<int> gens_;
  int id_ = -1;
  int sigma_ = -1;
  std::string name_;

  void validate();
};

struct SubgroupAnalysis {
  std::vector<int> sylow2;
  bool sylow2_normal = false;
  bool sylow2_cyclic = false;
  std::vector<int> o2;      // largest normal 2-subgroup
  std::vector<int> o2prime; // largest normal odd-order subgroup
  std::vector<std::vector<int>> odd_subgroups;
  bool odd_all_abelian = false;
  int d_g = 0;
  std::optional<int> unique_involution;
  bool sl2_like = false;
};

SubgroupAnalysis subgroup_analysis(const FiniteGroupTable& g);

} // namespace cakit
