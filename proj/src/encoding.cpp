#include "interdict/encoding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>

#include "interdict/rng.hpp"
#include "json.hpp"

namespace interdict {

MmilpGraph build_graph(const MilpInstance& milp, const FeatureConfig& cfg, std::uint64_t seed) {
  milp.validate();
  if (cfg.random_feature_dim < 0)
    throw std::invalid_argument("random_feature_dim must be nonnegative");
  const int r = cfg.random_feature_dim;
  const std::size_t p1 = milp.groups.size();  // p + 1 variable groups

  MmilpGraph g;
  std::vector<std::vector<int>> var_degree(p1);
  for (std::size_t k = 0; k < p1; ++k) var_degree[k].assign(milp.groups[k].vars.size(), 0);
  std::vector<int> con_degree(milp.rows.size(), 0);

  for (std::size_t i = 0; i < milp.rows.size(); ++i)
    for (const auto& entry : milp.rows[i].coeffs) {
      if (entry.coeff == 0.0) continue;
      g.edges.push_back({entry.var.group, entry.var.index, static_cast<int>(i), entry.coeff});
      ++var_degree[entry.var.group][entry.var.index];
      ++con_degree[i];
    }

  Rng rng(seed);
  for (std::size_t k = 0; k < p1; ++k) {
    const auto& vars = milp.groups[k].vars;
    Matrix feat(vars.size(), kVarBaseFeatures + r);
    for (std::size_t j = 0; j < vars.size(); ++j) {
      double* row = feat.row(j);
      row[0] = vars[j].obj_coeff;
      row[1] = vars[j].lb;
      row[2] = vars[j].ub;
      row[3] = vars[j].is_binary ? 1.0 : 0.0;
      row[4] = static_cast<double>(var_degree[k][j]);
      for (int q = 0; q < r; ++q) row[kVarBaseFeatures + q] = rng.next_unit();
    }
    g.var_features.push_back(std::move(feat));
  }

  g.con_features = Matrix(milp.rows.size(), kConBaseFeatures + r);
  for (std::size_t i = 0; i < milp.rows.size(); ++i) {
    const auto& row = milp.rows[i];
    double* feat = g.con_features.row(i);
    feat[0] = row.rhs;
    feat[1] = row.relation == Relation::le ? -1.0 : (row.relation == Relation::eq ? 0.0 : 1.0);
    feat[2] = row.tag == RowTag::dual ? 0.0 : (row.tag == RowTag::budget ? 1.0 : 2.0);
    feat[3] = static_cast<double>(con_degree[i]);
    for (int q = 0; q < r; ++q) feat[kConBaseFeatures + q] = rng.next_unit();
  }
  return g;
}

namespace {

void check_bijection(const std::vector<int>& perm, std::size_t n) {
  if (perm.size() != n) throw std::invalid_argument("permutation length mismatch");
  std::vector<char> hit(n, 0);
  for (int v : perm) {
    if (v < 0 || static_cast<std::size_t>(v) >= n || hit[v])
      throw std::invalid_argument("permutation is not a bijection");
    hit[v] = 1;
  }
}

Matrix permute_rows(const Matrix& m, const std::vector<int>& perm) {
  Matrix out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.rows; ++i)
    std::copy(m.row(i), m.row(i) + m.cols, out.row(perm[i]));
  return out;
}

}  // namespace

MmilpGraph permute_graph(const MmilpGraph& g, const GroupPermutations& perms) {
  if (perms.var_perms.size() != g.group_count())
    throw std::invalid_argument("need one permutation per variable group");
  for (std::size_t k = 0; k < g.group_count(); ++k)
    check_bijection(perms.var_perms[k], g.var_count(static_cast<int>(k)));
  check_bijection(perms.con_perm, g.con_count());

  MmilpGraph out;
  for (std::size_t k = 0; k < g.group_count(); ++k)
    out.var_features.push_back(permute_rows(g.var_features[k], perms.var_perms[k]));
  out.con_features = permute_rows(g.con_features, perms.con_perm);
  for (const auto& e : g.edges)
    out.edges.push_back(
        {e.group, perms.var_perms[e.group][e.var], perms.con_perm[e.constraint], e.weight});
  return out;
}

namespace {

// Keys are raw byte strings; sorted ranking per round makes the interned
// color ids canonical for the refined vertex set.
void append_u64(std::string& s, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) s.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

void append_double_bits(std::string& s, double v) {
  append_u64(s, std::bit_cast<std::uint64_t>(v));
}

void append_int(std::string& s, int v) {
  append_u64(s, static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
}

std::string weight_key(double w) {
  // Decimal nano-units; deterministic across platforms.
  return std::to_string(std::llround(w * 1e9));
}

}  // namespace

std::vector<std::size_t> ColorRefinement::partition_sizes(std::size_t round) const {
  std::vector<std::size_t> sizes;
  for (const auto& group_colors : rounds.at(round)) {
    std::vector<int> sorted = group_colors;
    std::sort(sorted.begin(), sorted.end());
    sizes.push_back(
        static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin()));
  }
  return sizes;
}

std::vector<ColorRefinement> refine_jointly(const std::vector<const MmilpGraph*>& graphs,
                                            int rounds) {
  if (rounds < 1) throw std::invalid_argument("refine: need at least one round");
  if (graphs.empty()) return {};
  const std::size_t p1 = graphs.front()->group_count();
  for (const auto* g : graphs)
    if (g->group_count() != p1)
      throw std::invalid_argument("refine_jointly: graphs must share the group signature");

  const std::size_t ngraphs = graphs.size();
  const std::size_t ngroups = p1 + 1;  // + constraint group

  // Adjacency per graph: constraint -> incident (group, var, weight) and
  // (group, var) -> incident (constraint, weight).
  struct Adj {
    std::vector<std::vector<std::tuple<int, int, double>>> by_con;
    std::vector<std::vector<std::vector<std::pair<int, double>>>> by_var;  // [k][j]
  };
  std::vector<Adj> adj(ngraphs);
  for (std::size_t gi = 0; gi < ngraphs; ++gi) {
    const auto& g = *graphs[gi];
    adj[gi].by_con.resize(g.con_count());
    adj[gi].by_var.resize(p1);
    for (std::size_t k = 0; k < p1; ++k)
      adj[gi].by_var[k].resize(g.var_count(static_cast<int>(k)));
    for (const auto& e : g.edges) {
      adj[gi].by_con[e.constraint].emplace_back(e.group, e.var, e.weight);
      adj[gi].by_var[e.group][e.var].emplace_back(e.constraint, e.weight);
    }
  }

  // colors[gi][g][v]; rounds history per graph.
  std::vector<std::vector<std::vector<int>>> colors(ngraphs);
  std::vector<ColorRefinement> history(ngraphs);

  auto rank_round = [&](auto key_fn) {
    // key_fn(gi, group, vertex) -> std::string
    std::vector<std::string> keys;
    for (std::size_t gi = 0; gi < ngraphs; ++gi)
      for (std::size_t grp = 0; grp < ngroups; ++grp) {
        std::size_t count = grp < p1 ? graphs[gi]->var_count(static_cast<int>(grp))
                                     : graphs[gi]->con_count();
        for (std::size_t v = 0; v < count; ++v) keys.push_back(key_fn(gi, grp, v));
      }
    std::vector<std::string> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::size_t cursor = 0;
    for (std::size_t gi = 0; gi < ngraphs; ++gi) {
      colors[gi].assign(ngroups, {});
      for (std::size_t grp = 0; grp < ngroups; ++grp) {
        std::size_t count = grp < p1 ? graphs[gi]->var_count(static_cast<int>(grp))
                                     : graphs[gi]->con_count();
        colors[gi][grp].resize(count);
        for (std::size_t v = 0; v < count; ++v) {
          auto it = std::lower_bound(sorted.begin(), sorted.end(), keys[cursor++]);
          colors[gi][grp][v] = static_cast<int>(it - sorted.begin());
        }
      }
      history[gi].rounds.push_back(colors[gi]);
    }
  };

  // Round 0: exact feature bytes, tagged by group.
  rank_round([&](std::size_t gi, std::size_t grp, std::size_t v) {
    std::string key;
    key.push_back(grp < p1 ? 'w' : 'c');
    append_int(key, static_cast<int>(grp));
    const Matrix& feat = grp < p1 ? graphs[gi]->var_features[grp] : graphs[gi]->con_features;
    for (std::size_t q = 0; q < feat.cols; ++q) append_double_bits(key, feat.at(v, q));
    return key;
  });

  for (int round = 1; round <= rounds; ++round) {
    auto prev = colors;  // frozen previous-round colors
    rank_round([&](std::size_t gi, std::size_t grp, std::size_t v) {
      std::string key;
      if (grp < p1) {
        key.push_back('w');
        append_int(key, static_cast<int>(grp));
        append_int(key, prev[gi][grp][v]);
        std::vector<std::pair<std::string, int>> neigh;
        for (auto [con, w] : adj[gi].by_var[grp][v])
          neigh.emplace_back(weight_key(w), prev[gi][p1][con]);
        std::sort(neigh.begin(), neigh.end());
        for (auto& [wk, c] : neigh) {
          key.append(wk);
          key.push_back('|');
          append_int(key, c);
        }
      } else {
        key.push_back('c');
        append_int(key, prev[gi][p1][v]);
        // Per-group sorted multisets keep the HASH per W_k separate.
        for (std::size_t k = 0; k < p1; ++k) {
          key.push_back('[');
          std::vector<std::pair<std::string, int>> neigh;
          for (auto [kk, var, w] : adj[gi].by_con[v])
            if (static_cast<std::size_t>(kk) == k)
              neigh.emplace_back(weight_key(w), prev[gi][k][var]);
          std::sort(neigh.begin(), neigh.end());
          for (auto& [wk, c] : neigh) {
            key.append(wk);
            key.push_back('|');
            append_int(key, c);
          }
          key.push_back(']');
        }
      }
      return key;
    });
  }
  return history;
}

ColorRefinement refine(const MmilpGraph& g, int rounds) {
  return refine_jointly({&g}, rounds).front();
}

bool distinguishable(const MmilpGraph& a, const MmilpGraph& b, int rounds) {
  if (a.group_count() != b.group_count()) return true;
  for (std::size_t k = 0; k < a.group_count(); ++k)
    if (a.var_count(static_cast<int>(k)) != b.var_count(static_cast<int>(k))) return true;
  if (a.con_count() != b.con_count()) return true;

  auto refinements = refine_jointly({&a, &b}, rounds);
  const auto& fa = refinements[0].final_colors();
  const auto& fb = refinements[1].final_colors();
  for (std::size_t grp = 0; grp < fa.size(); ++grp) {
    std::vector<int> ma = fa[grp], mb = fb[grp];
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    if (ma != mb) return true;
  }
  return false;
}

std::string graph_to_json(const MmilpGraph& g) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  ordered_json groups = ordered_json::array();
  for (std::size_t k = 0; k < g.group_count(); ++k) {
    const Matrix& feat = g.var_features[k];
    ordered_json rows = ordered_json::array();
    for (std::size_t v = 0; v < feat.rows; ++v)
      rows.push_back(std::vector<double>(feat.row(v), feat.row(v) + feat.cols));
    groups.push_back({{"group", k}, {"size", feat.rows}, {"features", std::move(rows)}});
  }
  j["var_groups"] = std::move(groups);
  ordered_json cons = ordered_json::array();
  for (std::size_t v = 0; v < g.con_features.rows; ++v)
    cons.push_back(
        std::vector<double>(g.con_features.row(v), g.con_features.row(v) + g.con_features.cols));
  j["constraints"] = std::move(cons);
  ordered_json edges = ordered_json::array();
  for (const auto& e : g.edges) edges.push_back({e.group, e.var, e.constraint, e.weight});
  j["edges"] = std::move(edges);
  return j.dump();
}

std::string wl_report(const ColorRefinement& refinement) {
  std::ostringstream out;
  for (std::size_t l = 0; l < refinement.rounds.size(); ++l) {
    out << "round " << l << ":";
    const auto& groups = refinement.rounds[l];
    for (std::size_t grp = 0; grp < groups.size(); ++grp) {
      std::vector<int> sorted = groups[grp];
      std::sort(sorted.begin(), sorted.end());
      std::size_t classes = std::unique(sorted.begin(), sorted.end()) - sorted.begin();
      const bool is_con = grp + 1 == groups.size();
      out << " " << (is_con ? std::string("V") : "W" + std::to_string(grp)) << "=" << classes
          << "/" << groups[grp].size();
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace interdict
