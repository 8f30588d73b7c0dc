#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "quadclass/config.hpp"
#include "quadclass/intmath.hpp"
#include "quadclass/qform.hpp"

namespace quadclass {

struct ClassGroupInfo {
    Integer discriminant;
    Integer h;
    std::vector<Integer> elementary_divisors;  // d_1 | d_2 | ... , product h
    std::vector<QuadForm> generators;          // generators[i] has order elementary_divisors[i]
};

struct FieldClassNumber {
    Integer h;
    Integer disc;       // fundamental discriminant of Q(sqrt(d_sf))
    Integer d_sf;       // square-free part of the input
    bool cross_checked; // analytic formula agreed (only attempted for |disc| <= analytic_cap)
};

FactorOptions factor_options(const Config& config);

/// Cache encoding of a factorization: "<sign>:<p>^<e>,<p>^<e>..." (for example "-1:2^1,11^2").
std::string encode_factorization(const Factorization& f);
std::optional<Factorization> decode_factorization(const Integer& n, const std::string& text);

/// Factorization routed through config.cache ("factor:<n>").
Factorization factor_cached(const Integer& n, const Config& config);

Integer class_number_forms(const Discriminant& disc, const Config& config = {});

/// h = w/(2|disc|) * |sum_{k=1}^{|disc|-1} (disc/k) k| for fundamental disc.
Integer class_number_analytic(const Discriminant& disc);

/// Class number of the imaginary quadratic field Q(sqrt(d)), d < 0.
/// Throws OutOfScopeError for d >= 0, ResourceCapError past max_disc and
/// InconsistencyError if the two class-number routes disagree.
FieldClassNumber class_number_of_field(const Integer& d, const Config& config = {});

/// Multiplicative order of [f] given a multiple h of it.
Integer order_of_class(const QuadForm& f, const Integer& h);

ClassGroupInfo group_structure(const Discriminant& disc, const Config& config = {});

}  // namespace quadclass
