#pragma once

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

#include "offord/gap.hpp"
#include "offord/multilinear.hpp"
#include "offord/multiset.hpp"
#include "offord/rational.hpp"

namespace offord {

// Multiset file: UTF-8 text, one rational per line ("p/q" or integer),
// '#' starts a comment, blank lines ignored.
Multiset read_multiset(std::istream& in);
Multiset load_multiset(const std::string& path);

// Matrix file: whitespace-separated rationals, one row per line.
std::vector<std::vector<Rational>> read_matrix_rows(std::istream& in);
std::vector<std::vector<Rational>> load_matrix_rows(const std::string& path);
RectMatrix load_rect_matrix(const std::string& path);
SymMatrix load_sym_matrix(const std::string& path);  // validates symmetry
void write_matrix_rows(std::ostream& out, const std::vector<std::vector<Rational>>& rows);

// Rows of +/-1 integers (Odlyzko counts, kernel heights).
std::vector<std::vector<int>> to_sign_rows(const std::vector<std::vector<Rational>>& rows);

// GAP JSON: {"offset": "p/q", "generators": [...], "lower": [...], "upper": [...]}
// with rationals as "p/q" strings.
nlohmann::ordered_json gap_to_json(const Gap& g);
Gap gap_from_json(const nlohmann::json& j);
Gap load_gap(const std::string& path);

}  // namespace offord
