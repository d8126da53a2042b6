#include "crossprod/group.hpp"

#include "crossprod/numkit.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

namespace crossprod {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, std::vector<std::string> labels)
    : table_(std::move(table)), labels_(std::move(labels)) {
  const int n = order();
  if (n == 0) throw Error(ErrorCode::InvalidInput, "group must be nonempty");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) throw Error(ErrorCode::InvalidInput, "table is not square");
    std::vector<bool> seen(n, false);
    for (int v : row) {
      if (v < 0 || v >= n || seen[v]) throw Error(ErrorCode::InvalidInput, "table is not a Latin square");
      seen[v] = true;
    }
  }
  for (int j = 0; j < n; ++j) {
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; ++i) {
      if (seen[table_[i][j]]) throw Error(ErrorCode::InvalidInput, "table is not a Latin square");
      seen[table_[i][j]] = true;
    }
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g) ok = table_[e][g] == g && table_[g][e] == g;
    if (ok) identity_ = e;
  }
  if (identity_ < 0) throw Error(ErrorCode::InvalidInput, "table has no identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (table_[table_[a][b]][c] != table_[a][table_[b][c]])
          throw Error(ErrorCode::InvalidInput, "table is not associative");
  inverse_.assign(n, -1);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (table_[g][h] == identity_) inverse_[g] = h;
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n)
    throw Error(ErrorCode::InvalidInput, "label count differs from group order");
}

int FiniteGroup::power(int g, long long e) const {
  const int base = e < 0 ? inv(g) : g;
  long long k = e < 0 ? -e : e;
  int out = identity_;
  while (k-- > 0) out = mul(out, base);
  return out;
}

int FiniteGroup::element_order(int g) const {
  int k = 1;
  for (int x = g; x != identity_; x = mul(x, g)) ++k;
  return k;
}

std::string FiniteGroup::label(int g) const {
  return labels_.empty() ? std::to_string(g) : labels_[g];
}

int FiniteGroup::find(const std::string& label) const {
  for (int g = 0; g < order(); ++g)
    if (this->label(g) == label) return g;
  return -1;
}

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < order(); ++a)
    for (int b = 0; b < order(); ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FiniteGroup::cyclic_generator() const {
  if (order() == 1) return identity_;
  for (int g = 0; g < order(); ++g)
    if (element_order(g) == order()) return g;
  return -1;
}

std::vector<std::vector<int>> FiniteGroup::conjugacy_classes() const {
  const int n = order();
  std::vector<int> cls(n, -1);
  std::vector<std::vector<int>> out;
  auto add_class = [&](int g) {
    std::set<int> members;
    for (int x = 0; x < n; ++x) members.insert(mul(mul(x, g), inv(x)));
    for (int m : members) cls[m] = static_cast<int>(out.size());
    out.emplace_back(members.begin(), members.end());
  };
  add_class(identity_);
  for (int g = 0; g < n; ++g)
    if (cls[g] < 0) add_class(g);
  return out;
}

bool Subgroup::contains(int g) const { return std::binary_search(members.begin(), members.end(), g); }

bool Subgroup::is_normal() const {
  for (int x = 0; x < parent.order(); ++x)
    for (int h : members)
      if (!contains(parent.mul(parent.mul(x, h), parent.inv(x)))) return false;
  return true;
}

int Subgroup::local_index(int parent_element) const {
  auto it = std::lower_bound(members.begin(), members.end(), parent_element);
  if (it == members.end() || *it != parent_element) return -1;
  return static_cast<int>(it - members.begin());
}

FiniteGroup Subgroup::as_group() const {
  const int k = size();
  std::vector<std::vector<int>> table(k, std::vector<int>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) table[i][j] = local_index(parent.mul(members[i], members[j]));
  std::vector<std::string> labels;
  if (!parent.labels().empty())
    for (int m : members) labels.push_back(parent.label(m));
  return FiniteGroup(std::move(table), std::move(labels));
}

FiniteGroup make_cyclic_group(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidInput, "cyclic group order must be positive");
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
  return FiniteGroup(std::move(table));
}

std::vector<std::vector<int>> symmetric_group_3_points() {
  const std::vector<int> e{0, 1, 2}, eta{1, 2, 0}, tau{1, 0, 2};
  auto compose = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> out(3);
    for (int i = 0; i < 3; ++i) out[i] = a[b[i]];
    return out;
  };
  const auto eta2 = compose(eta, eta);
  return {e, eta, eta2, tau, compose(eta, tau), compose(eta2, tau)};
}

FiniteGroup make_symmetric_group_3() {
  const auto pts = symmetric_group_3_points();
  std::vector<std::vector<int>> table(6, std::vector<int>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      std::vector<int> prod(3);
      for (int i = 0; i < 3; ++i) prod[i] = pts[a][pts[b][i]];
      table[a][b] = static_cast<int>(std::find(pts.begin(), pts.end(), prod) - pts.begin());
    }
  return FiniteGroup(std::move(table), {"e", "eta", "eta^2", "tau", "eta tau", "eta^2 tau"});
}

FiniteGroup make_direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const int ng = g.order(), nh = h.order();
  std::vector<std::vector<int>> table(ng * nh, std::vector<int>(ng * nh));
  std::vector<std::string> labels;
  for (int a = 0; a < ng * nh; ++a) {
    labels.push_back("(" + g.label(a / nh) + "," + h.label(a % nh) + ")");
    for (int b = 0; b < ng * nh; ++b)
      table[a][b] = g.mul(a / nh, b / nh) * nh + h.mul(a % nh, b % nh);
  }
  return FiniteGroup(std::move(table), std::move(labels));
}

Subgroup subgroup_closure(const FiniteGroup& g, const std::vector<int>& gens) {
  std::set<int> members{g.identity()};
  std::vector<int> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int x : frontier)
      for (int s : gens) {
        if (s < 0 || s >= g.order()) throw Error(ErrorCode::InvalidInput, "generator out of range");
        const int y = g.mul(x, s);
        if (members.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return Subgroup{g, std::vector<int>(members.begin(), members.end())};
}

Subgroup trivial_subgroup(const FiniteGroup& g) { return Subgroup{g, {g.identity()}}; }

Subgroup whole_group(const FiniteGroup& g) {
  std::vector<int> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  return Subgroup{g, all};
}

std::vector<int> right_coset_reps(const Subgroup& h) {
  const FiniteGroup& g = h.parent;
  std::vector<bool> covered(g.order(), false);
  std::vector<int> reps{g.identity()};
  for (int x : h.members) covered[g.mul(x, g.identity())] = true;
  for (int c = 0; c < g.order(); ++c) {
    if (covered[c]) continue;
    reps.push_back(c);
    for (int x : h.members) covered[g.mul(x, c)] = true;
  }
  return reps;
}

}  // namespace crossprod
