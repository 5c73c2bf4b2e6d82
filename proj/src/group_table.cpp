#include "cakit/group_table.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>

namespace cakit {

FiniteGroupTable::FiniteGroupTable(std::vector<std::vector<int>> table, std::vector<int> generators,
                                   std::string name)
    : n_(static_cast<int>(table.size())), t_(std::move(table)), gens_(std::move(generators)),
      name_(std::move(name)) {
  validate();
}

void FiniteGroupTable::validate() {
  if (n_ < 1 || n_ > 4096) throw std::domain_error("unsupported group order");
  for (const auto& row : t_)
    if (static_cast<int>(row.size()) != n_) throw std::domain_error("table is not square");
  // identity
  id_ = -1;
  for (int e = 0; e < n_; ++e) {
    bool ok = true;
    for (int a = 0; a < n_ && ok; ++a)
      if (t_[static_cast<size_t>(e)][static_cast<size_t>(a)] != a ||
          t_[static_cast<size_t>(a)][static_cast<size_t>(e)] != a)
        ok = false;
    if (ok) {
      id_ = e;
      break;
    }
  }
  if (id_ < 0) throw std::domain_error("no identity element");
  // inverses
  inv_.assign(static_cast<size_t>(n_), -1);
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b)
      if (t_[static_cast<size_t>(a)][static_cast<size_t>(b)] == id_ &&
          t_[static_cast<size_t>(b)][static_cast<size_t>(a)] == id_) {
        inv_[static_cast<size_t>(a)] = b;
        break;
      }
    if (inv_[static_cast<size_t>(a)] < 0) throw std::domain_error("element without inverse");
  }
  // associativity, exhaustively for the supported orders
  if (n_ <= 64) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw std::domain_error("multiplication table is not associative");
  }
  // generators generate
  if (gens_.empty()) {
    for (int a = 0; a < n_; ++a) gens_.push_back(a);
  }
  if (static_cast<int>(closure(gens_).size()) != n_)
    throw std::domain_error("declared generators do not generate");
  // record a central involution when it is unique
  auto ci = central_involutions();
  if (ci.size() == 1) sigma_ = ci[0];
}

int FiniteGroupTable::elem_order(int a) const {
  int k = 1;
  int x = a;
  while (x != id_) {
    x = mul(x, a);
    ++k;
    if (k > n_) throw std::runtime_error("order overflow");
  }
  return k;
}

bool FiniteGroupTable::is_central(int a) const {
  for (int b = 0; b < n_; ++b)
    if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<int> FiniteGroupTable::central_involutions() const {
  std::vector<int> out;
  for (int a = 0; a < n_; ++a)
    if (a != id_ && mul(a, a) == id_ && is_central(a)) out.push_back(a);
  return out;
}

void FiniteGroupTable::set_sigma(int s) {
  if (s != -1) {
    if (mul(s, s) != id_ || s == id_ || !is_central(s))
      throw std::domain_error("sigma must be a central involution");
  }
  sigma_ = s;
}

std::vector<int> FiniteGroupTable::closure(std::vector<int> gens) const {
  std::vector<bool> in(static_cast<size_t>(n_), false);
  std::vector<int> elems;
  auto push = [&](int x) {
    if (!in[static_cast<size_t>(x)]) {
      in[static_cast<size_t>(x)] = true;
      elems.push_back(x);
    }
  };
  push(id_);
  for (int g : gens) push(g);
  for (size_t i = 0; i < elems.size(); ++i)
    for (size_t j = 0; j < elems.size(); ++j) {
      push(mul(elems[i], elems[j]));
      if (elems.size() == static_cast<size_t>(n_)) break;
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool FiniteGroupTable::is_subgroup(const std::vector<int>& elems) const {
  std::set<int> s(elems.begin(), elems.end());
  if (!s.count(id_)) return false;
  for (int a : elems)
    for (int b : elems)
      if (!s.count(mul(a, b))) return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroupTable::all_subgroups() const {
  if (n_ > 64) throw std::domain_error("subgroup enumeration capped at order 64");
  std::set<std::vector<int>> found;
  found.insert(closure({}));
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<int>> snapshot(found.begin(), found.end());
    for (const auto& s : snapshot) {
      if (static_cast<int>(s.size()) == n_) continue;
      for (int g = 0; g < n_; ++g) {
        if (std::binary_search(s.begin(), s.end(), g)) continue;
        std::vector<int> gens = s;
        gens.push_back(g);
        auto c = closure(gens);
        if (found.insert(c).second) grew = true;
      }
    }
  }
  return {found.begin(), found.end()};
}

bool FiniteGroupTable::is_normal(const std::vector<int>& sub) const {
  std::set<int> s(sub.begin(), sub.end());
  for (int g = 0; g < n_; ++g)
    for (int x : sub)
      if (!s.count(conj(g, x))) return false;
  return true;
}

std::vector<int> FiniteGroupTable::frattini_subgroup() const {
  auto subs = all_subgroups();
  // maximal proper subgroups
  std::vector<std::vector<int>> maximal;
  for (const auto& s : subs) {
    if (static_cast<int>(s.size()) == n_) continue;
    bool is_max = true;
    for (const auto& t : subs) {
      if (static_cast<int>(t.size()) == n_ || t == s) continue;
      if (t.size() > s.size() && std::includes(t.begin(), t.end(), s.begin(), s.end())) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(s);
  }
  std::vector<int> inter;
  for (int a = 0; a < n_; ++a) {
    bool in_all = true;
    for (const auto& m : maximal)
      if (!std::binary_search(m.begin(), m.end(), a)) {
        in_all = false;
        break;
      }
    if (in_all) inter.push_back(a);
  }
  return inter;
}

FiniteGroupTable FiniteGroupTable::quotient(const std::vector<int>& normal_sub, std::vector<int>* proj) const {
  if (!is_subgroup(normal_sub) || !is_normal(normal_sub))
    throw std::domain_error("quotient requires a normal subgroup");
  // canonical coset representative: least element of the coset
  std::vector<int> rep(static_cast<size_t>(n_), -1);
  for (int a = 0; a < n_; ++a) {
    int r = n_;
    for (int h : normal_sub) r = std::min(r, mul(a, h));
    rep[static_cast<size_t>(a)] = r;
  }
  std::vector<int> reps;
  for (int a = 0; a < n_; ++a)
    if (rep[static_cast<size_t>(a)] == a) reps.push_back(a);
  std::map<int, int> idx;
  for (size_t i = 0; i < reps.size(); ++i) idx[reps[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> table(reps.size(), std::vector<int>(reps.size()));
  for (size_t i = 0; i < reps.size(); ++i)
    for (size_t j = 0; j < reps.size(); ++j)
      table[i][j] = idx[rep[static_cast<size_t>(mul(reps[i], reps[j]))]];
  std::vector<int> gens;
  for (int g : gens_) gens.push_back(idx[rep[static_cast<size_t>(g)]]);
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  if (proj) {
    proj->assign(static_cast<size_t>(n_), -1);
    for (int a = 0; a < n_; ++a) (*proj)[static_cast<size_t>(a)] = idx[rep[static_cast<size_t>(a)]];
  }
  return FiniteGroupTable(std::move(table), std::move(gens), name_ + "_mod");
}

FiniteGroupTable FiniteGroupTable::cyclic(int n) {
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] = (a + b) % n;
  return FiniteGroupTable(std::move(t), {n > 1 ? 1 : 0}, "c" + std::to_string(n));
}

FiniteGroupTable FiniteGroupTable::klein4() {
  std::vector<std::vector<int>> t(4, std::vector<int>(4));
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) t[static_cast<size_t>(a)][static_cast<size_t>(b)] = a ^ b;
  return FiniteGroupTable(std::move(t), {1, 2}, "klein4");
}

FiniteGroupTable FiniteGroupTable::quaternion(int order) {
  int h = order / 2; // |<x>|
  if (order < 8 || (order & (order - 1)) != 0) throw std::domain_error("quaternion order must be 2^n, n >= 3");
  // elements x^a y^b, index a + h*b
  auto idx = [&](int a, int b) { return ((a % h) + h) % h + h * (b & 1); };
  std::vector<std::vector<int>> t(static_cast<size_t>(order), std::vector<int>(static_cast<size_t>(order)));
  for (int a = 0; a < h; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < h; ++c)
        for (int d = 0; d < 2; ++d) {
          int lhs = idx(a, b);
          int rhs = idx(c, d);
          int ra, rb;
          if (b == 0) {
            ra = a + c;
            rb = d;
          } else {
            // x^a y x^c y^d: y x^c = x^{-c} y
            ra = a - c;
            rb = 1 + d;
          }
          if (rb >= 2) {
            rb -= 2;
            ra += h / 2; // y^2 = x^{2^{n-2}}
          }
          t[static_cast<size_t>(lhs)][static_cast<size_t>(rhs)] = idx(ra, rb);
        }
  FiniteGroupTable g(std::move(t), {1, h}, "q" + std::to_string(order));
  g.set_sigma(h / 2); // x^{2^{n-2}}, the unique involution
  return g;
}

FiniteGroupTable FiniteGroupTable::sl2_3() {
  // 2x2 matrices over F_3 of determinant 1
  std::vector<std::array<int, 4>> mats;
  std::map<std::array<int, 4>, int> idx;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d)
          if (((a * d - b * c) % 3 + 3) % 3 == 1) {
            std::array<int, 4> m = {a, b, c, d};
            idx[m] = static_cast<int>(mats.size());
            mats.push_back(m);
          }
  int n = static_cast<int>(mats.size());
  auto mmul = [](const std::array<int, 4>& x, const std::array<int, 4>& y) {
    std::array<int, 4> r = {(x[0] * y[0] + x[1] * y[2]) % 3, (x[0] * y[1] + x[1] * y[3]) % 3,
                            (x[2] * y[0] + x[3] * y[2]) % 3, (x[2] * y[1] + x[3] * y[3]) % 3};
    return r;
  };
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = idx[mmul(mats[static_cast<size_t>(i)], mats[static_cast<size_t>(j)])];
  int g1 = idx[{1, 1, 0, 1}];
  int g2 = idx[{0, 2, 1, 0}];
  FiniteGroupTable g(std::move(t), {g1, g2}, "sl2_3");
  g.set_sigma(idx[{2, 0, 0, 2}]); // -I
  return g;
}

FiniteGroupTable FiniteGroupTable::c3_semidirect_v4() {
  // even permutations of {0,1,2,3}
  std::vector<std::array<int, 4>> perms;
  std::map<std::array<int, 4>, int> idx;
  std::array<int, 4> p = {0, 1, 2, 3};
  auto parity = [](const std::array<int, 4>& q) {
    int inv = 0;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (q[static_cast<size_t>(i)] > q[static_cast<size_t>(j)]) ++inv;
    return inv % 2;
  };
  std::sort(p.begin(), p.end());
  do {
    if (parity(p) == 0) {
      idx[p] = static_cast<int>(perms.size());
      perms.push_back(p);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  int n = static_cast<int>(perms.size());
  auto pmul = [](const std::array<int, 4>& x, const std::array<int, 4>& y) {
    // (x*y)(i) = x(y(i))
    std::array<int, 4> r;
    for (int i = 0; i < 4; ++i) r[static_cast<size_t>(i)] = x[static_cast<size_t>(y[static_cast<size_t>(i)])];
    return r;
  };
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[static_cast<size_t>(i)][static_cast<size_t>(j)] = idx[pmul(perms[static_cast<size_t>(i)], perms[static_cast<size_t>(j)])];
  int three_cycle = idx[{1, 2, 0, 3}];
  int double_transposition = idx[{1, 0, 3, 2}];
  return FiniteGroupTable(std::move(t), {three_cycle, double_transposition}, "c3v4");
}

FiniteGroupTable FiniteGroupTable::direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b) {
  int n = a.order() * b.order();
  auto idx = [&](int x, int y) { return x * b.order() + y; };
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int x1 = 0; x1 < a.order(); ++x1)
    for (int y1 = 0; y1 < b.order(); ++y1)
      for (int x2 = 0; x2 < a.order(); ++x2)
        for (int y2 = 0; y2 < b.order(); ++y2)
          t[static_cast<size_t>(idx(x1, y1))][static_cast<size_t>(idx(x2, y2))] = idx(a.mul(x1, x2), b.mul(y1, y2));
  std::vector<int> gens;
  for (int g : a.generators()) gens.push_back(idx(g, b.identity()));
  for (int g : b.generators()) gens.push_back(idx(a.identity(), g));
  return FiniteGroupTable(std::move(t), std::move(gens), a.name() + "x" + b.name());
}

FiniteGroupTable FiniteGroupTable::semidirect(const FiniteGroupTable& n, const FiniteGroupTable& h,
                                              const std::vector<std::vector<int>>& action,
                                              const std::string& name) {
  // verify the action: each action[k] an automorphism of n, and a homomorphism from h
  for (int k = 0; k < h.order(); ++k) {
    const auto& phi = action[static_cast<size_t>(k)];
    for (int x = 0; x < n.order(); ++x)
      for (int y = 0; y < n.order(); ++y)
        if (phi[static_cast<size_t>(n.mul(x, y))] != n.mul(phi[static_cast<size_t>(x)], phi[static_cast<size_t>(y)]))
          throw std::domain_error("semidirect: action is not by automorphisms");
  }
  for (int k1 = 0; k1 < h.order(); ++k1)
    for (int k2 = 0; k2 < h.order(); ++k2)
      for (int x = 0; x < n.order(); ++x)
        if (action[static_cast<size_t>(h.mul(k1, k2))][static_cast<size_t>(x)] !=
            action[static_cast<size_t>(k1)][static_cast<size_t>(action[static_cast<size_t>(k2)][static_cast<size_t>(x)])])
          throw std::domain_error("semidirect: action is not a homomorphism");
  int order = n.order() * h.order();
  auto idx = [&](int x, int k) { return x * h.order() + k; };
  std::vector<std::vector<int>> t(static_cast<size_t>(order), std::vector<int>(static_cast<size_t>(order)));
  for (int x1 = 0; x1 < n.order(); ++x1)
    for (int k1 = 0; k1 < h.order(); ++k1)
      for (int x2 = 0; x2 < n.order(); ++x2)
        for (int k2 = 0; k2 < h.order(); ++k2) {
          int xx = n.mul(x1, action[static_cast<size_t>(k1)][static_cast<size_t>(x2)]);
          t[static_cast<size_t>(idx(x1, k1))][static_cast<size_t>(idx(x2, k2))] = idx(xx, h.mul(k1, k2));
        }
  std::vector<int> gens;
  for (int g : n.generators()) gens.push_back(idx(g, h.identity()));
  for (int g : h.generators()) gens.push_back(idx(n.identity(), g));
  return FiniteGroupTable(std::move(t), std::move(gens), name);
}

FiniteGroupTable FiniteGroupTable::by_name(const std::string& name) {
  if (name == "q8") return quaternion(8);
  if (name == "q16") return quaternion(16);
  if (name == "q32") return quaternion(32);
  if (name == "c2") return cyclic(2);
  if (name == "c3") return cyclic(3);
  if (name == "c4") return cyclic(4);
  if (name == "c6") return cyclic(6);
  if (name == "klein4") return klein4();
  if (name == "sl2_3") return sl2_3();
  if (name == "c3v4") return c3_semidirect_v4();
  throw std::domain_error("unknown group name: " + name);
}

SubgroupAnalysis subgroup_analysis(const FiniteGroupTable& g) {
  SubgroupAnalysis out;
  int n = g.order();
  int two_part = 1;
  int m = n;
  while (m % 2 == 0) {
    two_part *= 2;
    m /= 2;
  }

  auto subs = g.all_subgroups();
  // Sylow 2-subgroup (prefer a normal one), O_2, O_2'
  for (const auto& s : subs) {
    if (static_cast<int>(s.size()) == two_part && out.sylow2.empty()) out.sylow2 = s;
    if (static_cast<int>(s.size()) == two_part && g.is_normal(s)) {
      out.sylow2 = s;
      out.sylow2_normal = true;
    }
  }
  for (const auto& s : subs) {
    bool two_group = (static_cast<int>(s.size()) & (static_cast<int>(s.size()) - 1)) == 0;
    if (two_group && g.is_normal(s) && s.size() > out.o2.size()) out.o2 = s;
    if (s.size() % 2 == 1 && g.is_normal(s) && s.size() > out.o2prime.size()) out.o2prime = s;
  }
  // odd-order subgroups and their abelianness
  out.odd_all_abelian = true;
  for (const auto& s : subs) {
    if (s.size() % 2 == 0) continue;
    out.odd_subgroups.push_back(s);
    for (int a : s)
      for (int b : s)
        if (g.mul(a, b) != g.mul(b, a)) out.odd_all_abelian = false;
  }
  // cyclicity of the Sylow 2-subgroup
  if (!out.sylow2.empty()) {
    for (int a : out.sylow2)
      if (g.elem_order(a) == two_part) out.sylow2_cyclic = true;
  }
  // unique involution
  std::vector<int> invs;
  for (int a = 0; a < n; ++a)
    if (a != g.identity() && g.mul(a, a) == g.identity()) invs.push_back(a);
  if (invs.size() == 1) out.unique_involution = invs[0];
  // minimal number of generators by exhaustive tuple search
  auto generates = [&](const std::vector<int>& gens) { return static_cast<int>(g.closure(gens).size()) == n; };
  if (n == 1) {
    out.d_g = 0;
  } else {
    bool found = false;
    for (int a = 0; a < n && !found; ++a)
      if (generates({a})) {
        out.d_g = 1;
        found = true;
      }
    for (int a = 0; a < n && !found; ++a)
      for (int b = a + 1; b < n && !found; ++b)
        if (generates({a, b})) {
          out.d_g = 2;
          found = true;
        }
    for (int a = 0; a < n && !found; ++a)
      for (int b = a + 1; b < n && !found; ++b)
        for (int c = b + 1; c < n && !found; ++c)
          if (generates({a, b, c})) {
            out.d_g = 3;
            found = true;
          }
    if (!found) throw std::runtime_error("d_G > 3 unsupported");
  }
  out.sl2_like = out.odd_all_abelian && out.unique_involution.has_value() && !out.sylow2.empty() &&
                 !out.sylow2_cyclic && two_part > 1;
  return out;
}

} // namespace cakit
