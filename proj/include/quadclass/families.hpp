#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quadclass/classgroup.hpp"

namespace quadclass {

enum class FamilyKind { iizuka_squares, cor5_pair, cor7_triple, custom_offsets };

std::string to_string(FamilyKind kind);

struct FamilyMember {
    Integer offset;
    Integer value;  // base_d + offset
    Integer d_sf;
    Integer disc;
    Integer h;
    bool divisible = false;
    bool asserted = false;  // divisibility holds unconditionally for this member
    std::string note;
};

struct FamilyReport {
    FamilyKind kind = FamilyKind::custom_offsets;
    std::vector<std::pair<std::string, Integer>> parameters;
    Integer divisor;  // the n in "n | h"
    Integer base_d;
    std::vector<FamilyMember> members;
    bool all_asserted_pass = true;
};

struct CohnResult {
    Integer value;  // 1 - V^n
    Integer d_sf;
    Integer disc;
    Integer h;
    bool divisible = false;
    bool is_exception = false;  // (V, n) = (3, 5)
};

/// n | h(1 - V^n) for odd V, n >= 3, with the single exception (3, 5).
CohnResult cohn_check(const Integer& V, const Integer& n, const Config& config = {});

struct HoqueResult {
    Integer value;  // -(3^m p^(2n) + r)
    Integer d_sf;
    Integer disc;
    Integer h;
    bool divisible = false;
    std::string note;
};

/// 3 | h(square-free part of -(3^m p^(2n) + r)) for odd m > 1, odd p >= 3, n >= 1, r in {-2, 4}.
HoqueResult hoque_check(const Integer& m, const Integer& p, const Integer& n, const Integer& r,
                        const Config& config = {});

/// base_d = (1 - ((m+1)!)^(n l))^n with members at offsets 0, 1, 4, ..., m^2.
FamilyReport iizuka_family(const Integer& n, const Integer& m, const Integer& l,
                           const Config& config = {});

/// base_d = (k-1)^2 + (1 - (k!)^l)^n with members at offsets 0 and 2k - 1.
FamilyReport cor5_family(const Integer& n, const Integer& k, const Integer& l,
                         const Config& config = {});

/// base_d = 1 - 3^(3k) p^(6t) with members at offsets 0, 1, 3 (divisor 3).
FamilyReport cor7_family(const Integer& p, const Integer& k, const Integer& t,
                         const Config& config = {});

struct SearchOptions {
    Integer n;
    std::vector<Integer> offsets;
    Integer d_from;  // inclusive, most negative
    Integer d_to;    // inclusive
    std::size_t max_hits = 1;
    bool ascending = false;  // default walks down from d_to (smallest |d| first)
};

/// Every d in range with n | h(Q(sqrt(d + o))) for all offsets o, up to max_hits.
/// The top of the range is clipped to -1 - max(offsets) so that every d + o stays negative.
std::vector<FamilyReport> search_successive(const SearchOptions& options, const Config& config = {});

}  // namespace quadclass
