#pragma once
// Test-side oracles. Each one recomputes a quantity without the library
// routine it is compared against.
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace oracle {

inline long long p2_points(long long q) { return q * q + q + 1; }

// P^2 minus the seven F_2-lines: each line has q+1 points and each of the
// seven F_2-points lies on three lines.
inline long long d2_points(long long q) { return p2_points(q) - (7 * (q + 1) - 2 * 7); }
inline long long d1_points(long long q) { return q + 1 - 3; }

// |PGL(n, p)| from the order formula.
inline long long pgl_order(int n, long long p) {
  long long gl = 1, pn = 1;
  for (int i = 0; i < n; ++i) pn *= p;
  long long pi = 1;
  for (int i = 0; i < n; ++i) {
    gl *= pn - pi;
    pi *= p;
  }
  return gl / (p - 1);
}

// Carry-less product in F_2[t] reduced modulo `modulus` (bit i = t^i).
inline unsigned gf2_mul(unsigned a, unsigned b, unsigned modulus) {
  int deg = 0;
  while ((modulus >> (deg + 1)) != 0) ++deg;
  unsigned r = 0;
  for (int i = 0; b >> i; ++i)
    if ((b >> i) & 1u) r ^= a << i;
  for (int i = 2 * deg; i >= deg; --i)
    if ((r >> i) & 1u) r ^= modulus << (i - deg);
  return r;
}

// Classes (d; m_1..m_n) with C^2 = -2 and C.K = 0, |d| <= dmax, by
// depth-first search on the remaining square budget d^2 + 2.
inline void root_sweep_rec(int n, int d, std::vector<int>& m, long long budget, long long sum,
                           std::vector<std::vector<int>>& out) {
  if (static_cast<int>(m.size()) == n) {
    if (budget == 0 && sum == 3LL * d) {
      std::vector<int> c{d};
      c.insert(c.end(), m.begin(), m.end());
      out.push_back(c);
    }
    return;
  }
  for (int x = -5; x <= 5; ++x) {
    if (static_cast<long long>(x) * x > budget) continue;
    m.push_back(x);
    root_sweep_rec(n, d, m, budget - static_cast<long long>(x) * x, sum + x, out);
    m.pop_back();
  }
}

inline std::vector<std::vector<int>> root_sweep(int n, int dmax) {
  std::vector<std::vector<int>> out;
  std::vector<int> m;
  for (int d = -dmax; d <= dmax; ++d) root_sweep_rec(n, d, m, static_cast<long long>(d) * d + 2, 0, out);
  return out;
}

// Root counts of the lattice K^perp for n = 1..8: 0, A_1, A_2+A_1, A_4, D_5, E_6, E_7, E_8.
inline const std::map<int, int>& root_counts() {
  static const std::map<int, int> t = {{1, 0}, {2, 2}, {3, 8}, {4, 20}, {5, 40}, {6, 72}, {7, 126}, {8, 240}};
  return t;
}

// Validator for the subset of JSON Schema used by the shipped report schema:
// type, enum, required, properties, items, additionalProperties = false.
inline void schema_errors(const nlohmann::json& schema, const nlohmann::json& v, const std::string& path,
                          std::vector<std::string>& errs) {
  if (schema.contains("type")) {
    std::string t = schema["type"];
    bool ok = (t == "object" && v.is_object()) || (t == "array" && v.is_array()) || (t == "string" && v.is_string()) ||
              (t == "boolean" && v.is_boolean()) || (t == "integer" && v.is_number_integer()) ||
              (t == "number" && v.is_number());
    if (!ok) {
      errs.push_back(path + ": expected " + t);
      return;
    }
  }
  if (schema.contains("enum")) {
    bool hit = false;
    for (auto& e : schema["enum"]) hit = hit || e == v;
    if (!hit) errs.push_back(path + ": value not in enum");
  }
  if (v.is_object()) {
    if (schema.contains("required"))
      for (auto& k : schema["required"])
        if (!v.contains(k.get<std::string>())) errs.push_back(path + ": missing " + k.get<std::string>());
    for (auto& [k, sub] : v.items()) {
      if (schema.contains("properties") && schema["properties"].contains(k))
        schema_errors(schema["properties"][k], sub, path + "." + k, errs);
      else if (schema.value("additionalProperties", true) == false)
        errs.push_back(path + ": unexpected property " + k);
    }
  }
  if (v.is_array() && schema.contains("items"))
    for (size_t i = 0; i < v.size(); ++i) schema_errors(schema["items"], v[i], path + "[" + std::to_string(i) + "]", errs);
}

inline std::vector<std::string> schema_errors(const nlohmann::json& schema, const nlohmann::json& v) {
  std::vector<std::string> errs;
  schema_errors(schema, v, "$", errs);
  return errs;
}

}  // namespace oracle
