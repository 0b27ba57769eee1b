// Named polytopes used across the test suites.
#ifndef POLYKIT_TESTS_CORPUS_HPP
#define POLYKIT_TESTS_CORPUS_HPP

#include <polykit/polytope.hpp>

namespace corpus {

using polykit::Int;
using polykit::Polytope;
using polykit::Vec;

inline Vec pt(std::initializer_list<long long> xs) {
  Vec v;
  for (long long x : xs) v.push_back(Int(x));
  return v;
}

inline Polytope make(std::initializer_list<std::initializer_list<long long>> verts) {
  std::vector<Vec> vs;
  for (auto& v : verts) vs.push_back(pt(v));
  return polykit::build_polytope(vs);
}

inline Polytope segment01() { return make({{0}, {1}}); }
inline Polytope seg2() { return make({{0}, {2}}); }  // 2Δ1
inline Polytope delta2() { return make({{0, 0}, {1, 0}, {0, 1}}); }
inline Polytope delta2x2() { return make({{0, 0}, {2, 0}, {0, 2}}); }
inline Polytope delta2x3() { return make({{0, 0}, {3, 0}, {0, 3}}); }
inline Polytope unit_square() { return make({{0, 0}, {1, 0}, {0, 1}, {1, 1}}); }
inline Polytope rect35() { return make({{0, 0}, {3, 0}, {0, 5}, {3, 5}}); }
inline Polytope p_c() { return make({{0, 0}, {3, 0}, {1, 2}, {0, 1}}); }
inline Polytope tri_single() { return make({{0, 0}, {2, 0}, {1, 2}}); }
inline Polytope p_d(long long t) {
  return make({{-1, 0}, {3 * t, 0}, {2 * t, 1}, {0, 2}});
}
inline Polytope pentagon_f() {
  return make({{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}});
}
inline Polytope trapezoid_b() { return make({{0, 0}, {3, 0}, {3, 2}, {2, 2}}); }
// parallel-face enlargement of trapezoid_b: slant facet pushed out by 1
inline Polytope trapezoid_b_enlarged() {
  return make({{-1, 0}, {3, 0}, {3, 2}, {1, 2}});
}
inline Polytope ess_tri() { return make({{0, 0}, {2, 0}, {0, 1}}); }
inline Polytope growing_tri() { return make({{-2, 0}, {0, 0}, {0, 1}}); }
inline Polytope pyramid() {
  return make({{0, 0, 0}, {0, 0, 1}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}});
}
inline Polytope cube() {
  return make({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
               {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}});
}
// unimodular shear image of p_d(1); a second class-d representative with t=1
inline Polytope p_d1_sheared() {
  return make({{-1, 0}, {3, 0}, {3, 1}, {2, 2}});
}

struct Named {
  std::string name;
  Polytope p;
};

/// The standing corpus: >= 10 polytopes, dimensions 1-3.
inline std::vector<Named> all() {
  return {
      {"segment01", segment01()},
      {"2delta1", seg2()},
      {"delta2", delta2()},
      {"2delta2", delta2x2()},
      {"3delta2", delta2x3()},
      {"unit_square", unit_square()},
      {"rect35", rect35()},
      {"p_c", p_c()},
      {"tri_single", tri_single()},
      {"p_d1", p_d(1)},
      {"p_d2", p_d(2)},
      {"p_d3", p_d(3)},
      {"pentagon_f", pentagon_f()},
      {"trapezoid_b", trapezoid_b()},
      {"trapezoid_b_enlarged", trapezoid_b_enlarged()},
      {"ess_tri", ess_tri()},
      {"growing_tri", growing_tri()},
      {"pyramid", pyramid()},
      {"cube", cube()},
      {"p_d1_sheared", p_d1_sheared()},
  };
}

}  // namespace corpus

#endif
