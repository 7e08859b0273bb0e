#pragma once

#include <sphertwist/frobenius.hpp>
#include <sphertwist/quiver.hpp>

namespace fx {

using namespace sphertwist;

inline Vec v(std::initializer_list<long> xs, Field f = Field::rational()) {
    Vec out;
    for (long x : xs) out.push_back(Scalar(x, f));
    return out;
}

// k[x]/(x^2) with basis (1, x)
inline AlgebraPtr dual_numbers(Field f = Field::rational()) {
    std::vector<std::vector<Vec>> m = {{v({1, 0}, f), v({0, 1}, f)}, {v({0, 1}, f), v({0, 0}, f)}};
    return with_structure(from_structure_constants(f, {"1", "x"}, m, v({1, 0}, f)));
}

// cyclic quiver on n vertices, all paths of length `zero` vanish
inline AlgebraPtr cyclic_nakayama(std::size_t n, std::size_t zero = 2, Field f = Field::rational()) {
    QuiverSpec q;
    for (std::size_t i = 0; i < n; ++i) q.vertices.push_back(std::to_string(i + 1));
    for (std::size_t i = 0; i < n; ++i) q.arrows.push_back({"a" + std::to_string(i + 1), i, (i + 1) % n});
    q.zero_length = zero;
    return from_quiver(q, f);
}

inline AlgebraPtr a2_path(Field f = Field::rational()) {
    QuiverSpec q;
    q.vertices = {"1", "2"};
    q.arrows = {{"a", 0, 1}};
    return from_quiver(q, f);
}

inline ModulePtr simple(const AlgebraPtr& A, std::size_t c) { return simple_modules(A).at(c).module; }

// ambient A = k[x]/x^2, X = A + S
inline FrobeniusContext ctx1() {
    auto A = dual_numbers();
    return build_context(A, {{regular_module(A), 1, true, "A"}, {simple(A, 0), 1, false, "S"}});
}

// ambient N3, X = N3 + S1 + S2 + S3
inline FrobeniusContext ctx3() {
    auto A = cyclic_nakayama(3);
    return build_context(A, {{regular_module(A), 1, true, "A"},
                             {simple(A, 0), 1, false, "S1"},
                             {simple(A, 1), 1, false, "S2"},
                             {simple(A, 2), 1, false, "S3"}});
}

// ambient N3, X = N3 + S1
inline FrobeniusContext ctx3b() {
    auto A = cyclic_nakayama(3);
    return build_context(A, {{regular_module(A), 1, true, "A"}, {simple(A, 0), 1, false, "S1"}});
}

} // namespace fx
