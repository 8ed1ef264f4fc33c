#pragma once

/*
 * table_io.hpp
 *
 * JSON interchange for structure coefficient tables. Two accepted
 * shapes: a bare array of {alpha, gamma, poly} entries, or an object
 * {name, default_zero, entries} wrapping one. Polynomials travel as
 * strings in the expression grammar of poly.hpp, so fixtures stay
 * human-diffable. Emission is canonical (entries sorted by index,
 * keys alphabetical) and parse(emit(x)) == x.
 */

#include <map>
#include <string>
#include <utility>

#include "cwb/poly.hpp"
#include "cwb/repmod.hpp"

namespace cwb {

struct TableData {
    std::string name = "table";
    // With the flag set, indices without an explicit entry read as the
    // zero polynomial; without it, such a lookup throws out_of_range.
    bool default_zero = true;
    std::map<std::pair<int, int>, MPoly> entries;

    bool operator==(const TableData&) const = default;

    // View as a coefficient table for the sweep and classify layers.
    StructureCoeffTable as_table() const;
};

// Throws ParseError on malformed JSON, a bad polynomial, a non-integer
// index, or a duplicate (alpha, gamma) key.
TableData parse_table_json(const std::string& text);
TableData parse_table_file(const std::string& path);

std::string table_to_json(const TableData& data);

// Snapshot of a table's nonzero window entries, ready to serialize.
TableData sample_table(const StructureCoeffTable& table, int window);

}  // namespace cwb
