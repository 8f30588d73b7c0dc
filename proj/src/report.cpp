#include "quadclass/report.hpp"

#include <algorithm>
#include <sstream>

namespace quadclass {

namespace {

std::string str(const Integer& v) { return to_string(v); }
std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

Json member_json(const FamilyMember& m) {
    Json j;
    j["offset"] = str(m.offset);
    j["value"] = str(m.value);
    j["d_sf"] = str(m.d_sf);
    j["delta"] = str(m.disc);
    j["h"] = str(m.h);
    j["divisible"] = m.divisible;
    j["asserted"] = m.asserted;
    j["note"] = m.note;
    return j;
}

}  // namespace

Json to_json(const SquarefreeDecomp& sf, const Integer& n) {
    Json j;
    j["n"] = str(n);
    j["d"] = str(sf.d);
    j["t"] = str(sf.t);
    return j;
}

Json to_json(const FieldClassNumber& field, const Integer& d) {
    Json j;
    j["d"] = str(d);
    j["d_sf"] = str(field.d_sf);
    j["delta"] = str(field.disc);
    j["h"] = str(field.h);
    j["cross_checked"] = field.cross_checked;
    return j;
}

Json to_json(const ClassGroupInfo& info) {
    Json j;
    j["delta"] = str(info.discriminant);
    j["h"] = str(info.h);
    j["elementary_divisors"] = Json::array();
    for (const auto& d : info.elementary_divisors)
        j["elementary_divisors"].push_back(str(d));
    j["generators"] = Json::array();
    for (const auto& g : info.generators)
        j["generators"].push_back(to_string(g));
    return j;
}

Json to_json(const WitnessReport& r) {
    Json j;
    j["instance"] = {{"x", str(r.instance.x)}, {"y", str(r.instance.y)}, {"n", str(r.instance.n)}};
    j["d"] = str(r.d);
    j["t"] = str(r.t);
    j["delta"] = str(r.disc);
    j["h"] = str(r.h);
    j["alpha_form"] = to_string(r.alpha_form);
    j["alpha_order"] = str(r.alpha_order);
    j["cofactor_s"] = str(r.cofactor_s);
    j["n_divides_h"] = r.n_divides_h;
    j["alpha_n_principal"] = r.alpha_n_principal;
    return j;
}

Json to_json(const ScanResult& result, ScanVariant variant) {
    Json j;
    j["variant"] = variant == ScanVariant::standard ? "standard" : "four";
    j["records"] = Json::array();
    for (const ScanRecord& rec : result.records) {
        Json r;
        r["y"] = str(rec.y);
        if (!rec.error.empty()) {
            r["status"] = "error";
            r["error_kind"] = rec.error_kind;
            r["error"] = rec.error;
        } else if (rec.witness) {
            r["status"] = "ok";
            r["report"] = to_json(*rec.witness);
        } else if (rec.four) {
            r["status"] = "ok";
            r["d"] = str(rec.four->d);
            r["t"] = str(rec.four->t);
            r["delta"] = str(rec.four->disc);
            r["h"] = str(rec.four->h);
            r["n_divides_h"] = rec.four->n_divides_h;
        }
        j["records"].push_back(std::move(r));
    }
    j["skipped"] = Json::array();
    for (const Integer& y : result.skipped)
        j["skipped"].push_back(str(y));
    return j;
}

Json to_json(const CohnResult& r, const Integer& V, const Integer& n) {
    Json j;
    j["V"] = str(V);
    j["n"] = str(n);
    j["value"] = str(r.value);
    j["d_sf"] = str(r.d_sf);
    j["delta"] = str(r.disc);
    j["h"] = str(r.h);
    j["divisible"] = r.divisible;
    j["is_exception"] = r.is_exception;
    return j;
}

Json to_json(const HoqueResult& r) {
    Json j;
    j["value"] = str(r.value);
    j["d_sf"] = str(r.d_sf);
    j["delta"] = str(r.disc);
    j["h"] = str(r.h);
    j["divisible"] = r.divisible;
    j["note"] = r.note;
    return j;
}

Json to_json(const FamilyReport& report) {
    Json j;
    j["family_kind"] = to_string(report.kind);
    Json params = Json::object();
    for (const auto& [name, value] : report.parameters)
        params[name] = str(value);
    j["parameters"] = params;
    j["base_d"] = str(report.base_d);
    j["members"] = Json::array();
    for (const auto& m : report.members)
        j["members"].push_back(member_json(m));
    j["all_asserted_pass"] = report.all_asserted_pass;
    return j;
}

Json to_json(const std::vector<FamilyReport>& reports) {
    Json j = Json::array();
    for (const auto& r : reports)
        j.push_back(to_json(r));
    return j;
}

std::string render_table(const Table& table) {
    std::vector<std::size_t> width(table.header.size(), 0);
    for (std::size_t i = 0; i < table.header.size(); ++i)
        width[i] = table.header[i].size();
    for (const auto& row : table.rows)
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], row[i].size());

    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out << "  ";
            out << cells[i];
            if (i + 1 < cells.size())
                out << std::string(width[i] - cells[i].size(), ' ');
        }
        out << '\n';
    };
    emit(table.header);
    std::vector<std::string> rule;
    for (std::size_t w : width)
        rule.emplace_back(w, '-');
    emit(rule);
    for (const auto& row : table.rows)
        emit(row);
    return out.str();
}

std::string render_csv(const Table& table) {
    std::ostringstream out;
    auto emit = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out << ',';
            out << csv_escape(cells[i]);
        }
        out << '\n';
    };
    emit(table.header);
    for (const auto& row : table.rows)
        emit(row);
    return out.str();
}

Table to_table(const SquarefreeDecomp& sf, const Integer& n) {
    return {{"n", "d", "t"}, {{str(n), str(sf.d), str(sf.t)}}};
}

Table to_table(const FieldClassNumber& field, const Integer& d) {
    return {{"d", "d_sf", "delta", "h", "cross_checked"},
            {{str(d), str(field.d_sf), str(field.disc), str(field.h), yes_no(field.cross_checked)}}};
}

Table to_table(const ClassGroupInfo& info) {
    Table t{{"delta", "h", "invariant", "generator"}, {}};
    if (info.elementary_divisors.empty())
        t.rows.push_back({str(info.discriminant), str(info.h), "1", to_string(identity_form(info.discriminant))});
    for (std::size_t i = 0; i < info.elementary_divisors.size(); ++i)
        t.rows.push_back({str(info.discriminant), str(info.h), str(info.elementary_divisors[i]),
                          to_string(info.generators[i])});
    return t;
}

namespace {

std::vector<std::string> witness_row(const WitnessReport& r) {
    return {str(r.instance.x),      str(r.instance.y),   str(r.instance.n), str(r.d),
            str(r.t),               str(r.disc),         str(r.h),          to_string(r.alpha_form),
            str(r.alpha_order),     str(r.cofactor_s),   yes_no(r.alpha_n_principal),
            yes_no(r.n_divides_h)};
}

const std::vector<std::string> kWitnessHeader{"x", "y", "n", "d", "t", "delta", "h", "alpha",
                                              "order", "s", "alpha^n=1", "n|h"};

}  // namespace

Table to_table(const WitnessReport& report) { return {kWitnessHeader, {witness_row(report)}}; }

Table to_table(const ScanResult& result, ScanVariant variant) {
    Table t;
    if (variant == ScanVariant::standard) {
        t.header = kWitnessHeader;
        t.header.push_back("status");
        for (const auto& rec : result.records) {
            if (rec.witness) {
                auto row = witness_row(*rec.witness);
                row.push_back("ok");
                t.rows.push_back(std::move(row));
            } else {
                std::vector<std::string> row(kWitnessHeader.size(), "-");
                row[1] = str(rec.y);
                row.push_back(rec.error_kind);
                t.rows.push_back(std::move(row));
            }
        }
    } else {
        t.header = {"y", "d", "t", "delta", "h", "n|h", "status"};
        for (const auto& rec : result.records) {
            if (rec.four)
                t.rows.push_back({str(rec.y), str(rec.four->d), str(rec.four->t), str(rec.four->disc),
                                  str(rec.four->h), yes_no(rec.four->n_divides_h), "ok"});
            else
                t.rows.push_back({str(rec.y), "-", "-", "-", "-", "-", rec.error_kind});
        }
    }
    return t;
}

Table to_table(const CohnResult& r, const Integer& V, const Integer& n) {
    return {{"V", "n", "value", "d_sf", "delta", "h", "n|h", "exception"},
            {{str(V), str(n), str(r.value), str(r.d_sf), str(r.disc), str(r.h), yes_no(r.divisible),
              yes_no(r.is_exception)}}};
}

Table to_table(const HoqueResult& r) {
    return {{"value", "d_sf", "delta", "h", "3|h", "note"},
            {{str(r.value), str(r.d_sf), str(r.disc), str(r.h), yes_no(r.divisible), r.note}}};
}

Table to_table(const FamilyReport& report) {
    Table t{{"family", "base_d", "offset", "value", "d_sf", "delta", "h", "n|h", "asserted", "note"}, {}};
    for (const auto& m : report.members)
        t.rows.push_back({to_string(report.kind), str(report.base_d), str(m.offset), str(m.value),
                          str(m.d_sf), str(m.disc), str(m.h), yes_no(m.divisible), yes_no(m.asserted),
                          m.note});
    return t;
}

Table to_table(const std::vector<FamilyReport>& reports) {
    Table t{{"base_d", "offset", "value", "d_sf", "delta", "h", "n|h"}, {}};
    for (const auto& report : reports)
        for (const auto& m : report.members)
            t.rows.push_back({str(report.base_d), str(m.offset), str(m.value), str(m.d_sf), str(m.disc),
                              str(m.h), yes_no(m.divisible)});
    if (!reports.empty() && reports.front().members.empty())
        for (const auto& report : reports)
            t.rows.push_back({str(report.base_d), "-", "-", "-", "-", "-", "-"});
    return t;
}

}  // namespace quadclass
