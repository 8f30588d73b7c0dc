#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "quadclass/classgroup.hpp"
#include "quadclass/families.hpp"
#include "quadclass/witness.hpp"

namespace quadclass {

// Integers are always emitted as decimal strings; key order is fixed.
using Json = nlohmann::ordered_json;

Json to_json(const SquarefreeDecomp& sf, const Integer& n);
Json to_json(const FieldClassNumber& field, const Integer& d);
Json to_json(const ClassGroupInfo& info);
Json to_json(const WitnessReport& report);
Json to_json(const ScanResult& result, ScanVariant variant);
Json to_json(const CohnResult& result, const Integer& V, const Integer& n);
Json to_json(const HoqueResult& result);
Json to_json(const FamilyReport& report);
Json to_json(const std::vector<FamilyReport>& reports);

/// Rows of strings with a header; rendered as aligned columns or CSV.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

std::string render_table(const Table& table);
std::string render_csv(const Table& table);

Table to_table(const SquarefreeDecomp& sf, const Integer& n);
Table to_table(const FieldClassNumber& field, const Integer& d);
Table to_table(const ClassGroupInfo& info);
Table to_table(const WitnessReport& report);
Table to_table(const ScanResult& result, ScanVariant variant);
Table to_table(const CohnResult& result, const Integer& V, const Integer& n);
Table to_table(const HoqueResult& result);
Table to_table(const FamilyReport& report);
Table to_table(const std::vector<FamilyReport>& reports);

}  // namespace quadclass
