#include "offord/io.hpp"

#include <fstream>
#include <sstream>

#include "offord/errors.hpp"

namespace offord {

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open file: " + path);
    return in;
}

std::string strip_comment(const std::string& line) {
    auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

}  // namespace

Multiset read_multiset(std::istream& in) {
    Multiset out;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        std::string tok;
        while (ls >> tok) out.elems.push_back(Rational::parse(tok));
    }
    return out;
}

Multiset load_multiset(const std::string& path) {
    auto in = open_or_throw(path);
    return read_multiset(in);
}

std::vector<std::vector<Rational>> read_matrix_rows(std::istream& in) {
    std::vector<std::vector<Rational>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(strip_comment(line));
        std::vector<Rational> row;
        std::string tok;
        while (ls >> tok) row.push_back(Rational::parse(tok));
        if (!row.empty()) rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<std::vector<Rational>> load_matrix_rows(const std::string& path) {
    auto in = open_or_throw(path);
    return read_matrix_rows(in);
}

RectMatrix load_rect_matrix(const std::string& path) { return RectMatrix::from_rows(load_matrix_rows(path)); }

SymMatrix load_sym_matrix(const std::string& path) { return SymMatrix::from_rows(load_matrix_rows(path)); }

void write_matrix_rows(std::ostream& out, const std::vector<std::vector<Rational>>& rows) {
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) {
            if (j) out << ' ';
            out << row[j].str();
        }
        out << '\n';
    }
}

std::vector<std::vector<int>> to_sign_rows(const std::vector<std::vector<Rational>>& rows) {
    std::vector<std::vector<int>> out;
    out.reserve(rows.size());
    for (const auto& row : rows) {
        std::vector<int> r;
        r.reserve(row.size());
        for (const auto& v : row) {
            if (v == Rational(1))
                r.push_back(1);
            else if (v == Rational(-1))
                r.push_back(-1);
            else
                throw input_error("expected +/-1 entries, found " + v.str());
        }
        out.push_back(std::move(r));
    }
    return out;
}

nlohmann::ordered_json gap_to_json(const Gap& g) {
    nlohmann::ordered_json j;
    j["offset"] = g.offset().str();
    auto& gens = j["generators"] = nlohmann::ordered_json::array();
    for (const auto& gi : g.generators()) gens.push_back(gi.str());
    j["lower"] = g.lower();
    j["upper"] = g.upper();
    return j;
}

Gap gap_from_json(const nlohmann::json& j) {
    try {
        Rational offset = Rational::parse(j.at("offset").get<std::string>());
        std::vector<Rational> gens;
        for (const auto& s : j.at("generators")) gens.push_back(Rational::parse(s.get<std::string>()));
        std::vector<long long> lo = j.at("lower").get<std::vector<long long>>();
        std::vector<long long> hi = j.at("upper").get<std::vector<long long>>();
        return Gap(std::move(offset), std::move(gens), std::move(lo), std::move(hi));
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("malformed GAP JSON: ") + e.what());
    }
}

Gap load_gap(const std::string& path) {
    auto in = open_or_throw(path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error("cannot parse GAP JSON from " + path + ": " + e.what());
    }
    return gap_from_json(j);
}

}  // namespace offord
