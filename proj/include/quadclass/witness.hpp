#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadclass/classgroup.hpp"

namespace quadclass {

/// The field Q(sqrt(x^2 - y^n)), n odd >= 3, x^2 < y^n.
struct Instance {
    Integer x;
    Integer y;
    Integer n;
};

/// Checks x, y >= 1, n odd >= 3 and x^2 < y^n. Throws InputError otherwise.
void validate_instance(const Instance& inst);

struct WitnessReport {
    Instance instance;
    Integer d;            // y^n - x^2 = d t^2, d square-free and positive
    Integer t;
    Integer disc;         // fundamental discriminant of Q(sqrt(-d))
    Integer h;
    QuadForm alpha_form;  // reduced class of the norm-y ideal
    Integer alpha_order;
    Integer cofactor_s;   // n / alpha_order, 0 when alpha_order does not divide n
    bool n_divides_h = false;
    bool alpha_n_principal = false;
};

/// Form (y, B, C) of the norm-y ideal alpha with alpha^n = (x - t sqrt(-d)), before reduction.
/// 0 <= B < 2y; B = beta mod y (B odd) for odd discriminants, B = 2 beta for even ones, where
/// beta = x / t mod y. Requires gcd(2x, y) = 1 (InputError otherwise).
QuadForm alpha_form_unreduced(const Instance& inst, const Config& config = {});

/// reduce(alpha_form_unreduced(inst)).
QuadForm alpha_form(const Instance& inst, const Config& config = {});

WitnessReport verify_instance(const Instance& inst, const Config& config = {});

enum class ScanVariant { standard, four };

/// Divisibility data for x^2 - 4 y^n; no witness form is built for this shape.
struct FourRecord {
    Integer d;
    Integer t;
    Integer disc;
    Integer h;
    bool n_divides_h = false;
};

struct ScanRecord {
    Integer y;
    std::optional<WitnessReport> witness;  // standard variant
    std::optional<FourRecord> four;        // four variant
    std::string error;                     // non-empty when the instance failed
    std::string error_kind;                // "input", "resource_cap", "inconsistency"
};

struct ScanResult {
    std::vector<ScanRecord> records;  // admissible y, ascending
    std::vector<Integer> skipped;     // y failing the gcd or size condition
};

/// Verifies every y in [y_from, y_to]. Per-instance errors are captured in the records.
ScanResult scan(const Integer& x, const Integer& n, const Integer& y_from, const Integer& y_to,
                ScanVariant variant, const Config& config = {});

}  // namespace quadclass
