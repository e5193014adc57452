#pragma once

// Faces are subsets of [m] with m <= 64, stored as bitmasks. Bit i-1 is
// vertex i; all public interfaces speak 1-indexed vertex lists.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "rtoric/error.hpp"

namespace rtoric {

using Face = std::uint64_t;

inline constexpr unsigned kMaxVertices = 64;

inline int card(Face f) { return std::popcount(f); }

inline Face vertex_bit(unsigned v) { return Face(1) << (v - 1); }

inline Face full_set(unsigned m) { return m >= 64 ? ~Face(0) : (Face(1) << m) - 1; }

inline bool contains(Face f, unsigned v) { return (f >> (v - 1)) & 1u; }

inline bool is_subset(Face a, Face b) { return (a & ~b) == 0; }

/// Ascending 1-indexed vertex list.
inline std::vector<unsigned> vertices(Face f) {
    std::vector<unsigned> out;
    while (f) {
        out.push_back(unsigned(std::countr_zero(f)) + 1);
        f &= f - 1;
    }
    return out;
}

inline Face face_of(const std::vector<unsigned>& vs, unsigned m) {
    Face f = 0;
    for (unsigned v : vs) {
        if (v < 1 || v > m) throw InvalidInput("vertex " + std::to_string(v) + " out of range 1.." + std::to_string(m));
        if (contains(f, v)) throw InvalidInput("duplicate vertex " + std::to_string(v) + " in face");
        f |= vertex_bit(v);
    }
    return f;
}

/// Canonical face order: by cardinality, then lexicographic on ascending vertex lists.
inline bool face_less(Face a, Face b) {
    const int ca = card(a), cb = card(b);
    if (ca != cb) return ca < cb;
    if (a == b) return false;
    const Face low = (a ^ b) & -(a ^ b);
    return (a & low) != 0;
}

struct FaceLess {
    bool operator()(Face a, Face b) const { return face_less(a, b); }
};

/// (-1)^(number of elements of f below v): the sign of inserting v into f
/// under the ascending orientation.
inline int insertion_sign(Face f, unsigned v) { return (card(f & (vertex_bit(v) - 1)) & 1) ? -1 : 1; }

/// Sign of the permutation sorting the concatenation (a, b) of two disjoint
/// ascending lists: (-1)^#{(x, y) : x in a, y in b, x > y}.
inline int shuffle_sign(Face a, Face b) {
    int inv = 0;
    for (Face t = b; t; t &= t - 1) {
        const Face low = t & -t;
        inv += card(a & ~((low << 1) - 1));
    }
    return (inv & 1) ? -1 : 1;
}

/// "{1,3}" style; "{}" for the empty face.
inline std::string face_str(Face f) {
    std::string s = "{";
    bool first = true;
    for (unsigned v : vertices(f)) {
        s += (first ? "" : ",") + std::to_string(v);
        first = false;
    }
    return s + "}";
}

/// All subsets of f, in increasing bitmask order.
template <class F>
void for_each_subset(Face f, F&& fn) {
    Face s = 0;
    for (;;) {
        fn(s);
        if (s == f) break;
        s = (s - f) & f;
    }
}

}  // namespace rtoric
