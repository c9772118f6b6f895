#include <algorithm>
#include <map>
#include <set>

#include "synthsql/dbforge/init.hpp"
#include "synthsql/errors.hpp"
#include "synthsql/util.hpp"

namespace synthsql {

std::vector<std::string> topo_order(const DatabaseSchema& schema) {
  // child -> parents (tables it references)
  std::map<std::string, std::set<std::string>> parents;
  std::map<std::string, std::string> display;  // lower-cased -> original
  for (const auto& t : schema.tables) {
    std::string name = to_lower(t.name);
    display[name] = t.name;
    parents[name];
    for (const auto& fk : t.foreign_keys) {
      // self-referencing FKs stay in; they surface as length-1 cycles
      parents[name].insert(to_lower(fk.referenced_table));
    }
  }

  std::map<std::string, std::set<std::string>> children;
  std::map<std::string, int> in_degree;
  for (const auto& [child, ps] : parents) {
    in_degree[child] = static_cast<int>(ps.size());
    for (const auto& p : ps) children[p].insert(child);
  }

  // name-sorted queue of zero-in-degree tables keeps the order deterministic
  std::set<std::string> ready;
  for (const auto& [name, deg] : in_degree)
    if (deg == 0) ready.insert(name);

  std::vector<std::string> order;
  while (!ready.empty()) {
    std::string next = *ready.begin();
    ready.erase(ready.begin());
    order.push_back(display[next]);
    for (const auto& child : children[next])
      if (--in_degree[child] == 0) ready.insert(child);
  }

  if (order.size() != schema.tables.size()) {
    // walk parent edges from an unplaced node until a node repeats
    std::string start;
    for (const auto& [name, deg] : in_degree)
      if (deg > 0) {
        start = name;
        break;
      }
    std::vector<std::string> path;
    std::set<std::string> seen;
    std::string cur = start;
    while (!seen.count(cur)) {
      seen.insert(cur);
      path.push_back(cur);
      std::string next;
      for (const auto& p : parents[cur])
        if (in_degree.count(p) && in_degree[p] > 0) {
          next = p;
          break;
        }
      if (next.empty()) break;
      cur = next;
    }
    std::vector<std::string> cycle;
    auto it = std::find(path.begin(), path.end(), cur);
    for (; it != path.end(); ++it) cycle.push_back(display[*it]);
    cycle.push_back(display[cur]);
    std::string msg = "foreign-key cycle: ";
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (i) msg += " -> ";
      msg += cycle[i];
    }
    throw CycleError(cycle, msg);
  }
  return order;
}

}  // namespace synthsql
