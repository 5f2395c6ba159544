#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "storyline/cnf.hpp"
#include "storyline/instance_io.hpp"

namespace storyline {

// DIMACS CNF emission: header, then one line per clause, space-separated
// literals terminated by 0. ASCII, '\n' line ends, no comment lines, so
// output is byte-identical across runs for the same formula.
inline void write_dimacs(const CnfFormula& formula, std::ostream& out) {
    out << "p cnf " << formula.num_variables << " " << formula.clauses.size() << "\n";
    for (const std::vector<int>& clause : formula.clauses) {
        for (int lit : clause) out << lit << " ";
        out << "0\n";
    }
}

inline std::string write_dimacs(const CnfFormula& formula) {
    std::ostringstream out;
    write_dimacs(formula, out);
    return out.str();
}

// Reads DIMACS CNF, accepting 'c' comment lines and clauses split across
// lines. The declared counts are trusted for sizing only; literals out of
// range are an error.
inline CnfFormula parse_dimacs(std::istream& in) {
    CnfFormula formula;
    bool seen_header = false;
    std::string line;
    int line_no = 0;
    std::vector<int> current;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && (line[0] == 'c' || line[0] == '%')) continue;
        std::istringstream tokens(line);
        std::string tok;
        while (tokens >> tok) {
            if (!seen_header) {
                if (tok != "p") throw ParseError(line_no, "expected 'p cnf' header");
                std::string cnf;
                long vars = 0, clauses = 0;
                if (!(tokens >> cnf >> vars >> clauses) || cnf != "cnf" || vars < 0)
                    throw ParseError(line_no, "malformed 'p cnf' header");
                formula.num_variables = static_cast<int>(vars);
                formula.clauses.reserve(clauses);
                seen_header = true;
                break;
            }
            int lit;
            try {
                lit = std::stoi(tok);
            } catch (const std::exception&) {
                throw ParseError(line_no, "expected literal, got '" + tok + "'");
            }
            if (lit == 0) {
                formula.clauses.push_back(std::move(current));
                current.clear();
            } else {
                if (std::abs(lit) > formula.num_variables)
                    throw ParseError(line_no, "literal out of range: " + tok);
                current.push_back(lit);
            }
        }
    }
    if (!seen_header) throw ParseError(line_no + 1, "missing 'p cnf' header");
    if (!current.empty()) formula.clauses.push_back(std::move(current));
    return formula;
}

// Result-file grammar used by minisat-style solvers:
//   SAT\n<literals> 0\n    or    UNSAT\n
struct DimacsResult {
    bool sat = false;
    std::vector<int> model;  // signed literals, present iff sat
};

inline DimacsResult parse_result(std::istream& in) {
    DimacsResult result;
    std::string status;
    if (!(in >> status)) throw ParseError(1, "empty result file");
    if (status == "UNSAT") return result;
    if (status != "SAT") throw ParseError(1, "expected SAT or UNSAT, got '" + status + "'");
    result.sat = true;
    int lit;
    while (in >> lit) {
        if (lit == 0) break;
        result.model.push_back(lit);
    }
    return result;
}

inline void write_result(const DimacsResult& result, std::ostream& out) {
    if (!result.sat) {
        out << "UNSAT\n";
        return;
    }
    out << "SAT\n";
    for (int lit : result.model) out << lit << " ";
    out << "0\n";
}

}  // namespace storyline
