#pragma once

#include <istream>
#include <ostream>
#include <sstream>

#include "storyline/instance_io.hpp"
#include "storyline/solution.hpp"

namespace storyline {

// Solution file grammar ('#' comments):
//   perm <r> <id1> <id2> ...    in order r = 1, 2, ...
//   assign <group-index> <perm-index>   in order 1, 2, ...
inline Solution parse_solution(std::istream& in) {
    Solution solution;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<std::string> tokens = detail::tokenize(line);
        if (tokens.empty()) continue;
        const std::string& kw = tokens[0];
        if (kw == "perm") {
            if (tokens.size() < 2) throw ParseError(line_no, "usage: perm <r> <id1> ...");
            int r = detail::parse_int(tokens[1], line_no, "permutation index");
            if (r != static_cast<int>(solution.permutations.size()) + 1)
                throw ParseError(line_no, "permutation indices must be 1, 2, ... in order");
            std::vector<int> perm;
            for (std::size_t i = 2; i < tokens.size(); ++i)
                perm.push_back(detail::parse_int(tokens[i], line_no, "character id"));
            solution.permutations.push_back(std::move(perm));
        } else if (kw == "assign") {
            if (tokens.size() != 3) throw ParseError(line_no, "usage: assign <group> <perm>");
            int group = detail::parse_int(tokens[1], line_no, "group index");
            int r = detail::parse_int(tokens[2], line_no, "permutation index");
            if (group != static_cast<int>(solution.assignment.size()) + 1)
                throw ParseError(line_no, "group indices must be 1, 2, ... in order");
            if (r < 1 || r > static_cast<int>(solution.permutations.size()))
                throw ParseError(line_no, "assigned permutation out of range");
            solution.assignment.push_back(r);
        } else {
            throw ParseError(line_no, "unknown keyword '" + kw + "'");
        }
    }
    return solution;
}

inline Solution parse_solution(const std::string& text) {
    std::istringstream in(text);
    return parse_solution(in);
}

inline void write_solution(const Solution& solution, std::ostream& out) {
    for (int r = 0; r < solution.lambda(); ++r) {
        out << "perm " << r + 1;
        for (int c : solution.permutations[r]) out << " " << c;
        out << "\n";
    }
    for (std::size_t l = 0; l < solution.assignment.size(); ++l)
        out << "assign " << l + 1 << " " << solution.assignment[l] << "\n";
}

inline std::string write_solution(const Solution& solution) {
    std::ostringstream out;
    write_solution(solution, out);
    return out.str();
}

}  // namespace storyline
