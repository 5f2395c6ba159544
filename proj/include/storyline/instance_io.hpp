#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "storyline/instance.hpp"

namespace storyline {

struct ParseError : std::runtime_error {
    ParseError(int line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message), line(line) {}
    int line;
};

namespace detail {

// Splits a line into whitespace-separated tokens, dropping '#' comments.
inline std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::string current;
    for (char c : line) {
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            if (!current.empty()) tokens.push_back(std::move(current)), current.clear();
        } else {
            current += c;
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

inline int parse_int(const std::string& token, int line, const char* what) {
    try {
        std::size_t used = 0;
        int value = std::stoi(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        return value;
    } catch (const std::exception&) {
        throw ParseError(line, std::string("expected ") + what + ", got '" + token + "'");
    }
}

inline Time parse_time(const std::string& token, int line) {
    if (auto t = Time::parse(token)) return *t;
    throw ParseError(line, "expected decimal time, got '" + token + "'");
}

}  // namespace detail

// Instance file grammar (UTF-8, line-based, '#' comments):
//   storyline 1
//   chars <k>
//   life <char-id> <birth> <death>     (zero or more; half-open [birth, death))
//   meet <start> <end> <id1> <id2> ... (zero or more)
// Characters without a life line are treated as alive over the full
// event horizon, or [0, 1) if the file defines no times at all.
inline StorylineInstance parse_instance(std::istream& in) {
    StorylineInstance instance;
    std::vector<bool> has_life;
    bool seen_header = false;
    bool seen_chars = false;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<std::string> tokens = detail::tokenize(line);
        if (tokens.empty()) continue;

        if (!seen_header) {
            if (tokens.size() != 2 || tokens[0] != "storyline" || tokens[1] != "1")
                throw ParseError(line_no, "expected 'storyline 1' header");
            seen_header = true;
            continue;
        }
        const std::string& kw = tokens[0];
        if (kw == "chars") {
            if (seen_chars) throw ParseError(line_no, "duplicate 'chars' line");
            if (tokens.size() != 2) throw ParseError(line_no, "usage: chars <k>");
            instance.num_characters = detail::parse_int(tokens[1], line_no, "character count");
            if (instance.num_characters < 1)
                throw ParseError(line_no, "character count must be positive");
            instance.lifespans.resize(instance.num_characters);
            has_life.assign(instance.num_characters, false);
            seen_chars = true;
        } else if (kw == "life") {
            if (!seen_chars) throw ParseError(line_no, "'life' before 'chars'");
            if (tokens.size() != 4) throw ParseError(line_no, "usage: life <id> <birth> <death>");
            int id = detail::parse_int(tokens[1], line_no, "character id");
            if (id < 1 || id > instance.num_characters)
                throw ParseError(line_no, "character id out of range");
            Time birth = detail::parse_time(tokens[2], line_no);
            Time death = detail::parse_time(tokens[3], line_no);
            if (!(birth < death)) throw ParseError(line_no, "birth must precede death");
            instance.lifespans[id - 1].push_back({birth, death});
            has_life[id - 1] = true;
        } else if (kw == "meet") {
            if (!seen_chars) throw ParseError(line_no, "'meet' before 'chars'");
            if (tokens.size() < 4)
                throw ParseError(line_no, "usage: meet <start> <end> <id1> ...");
            Meeting m;
            m.start = detail::parse_time(tokens[1], line_no);
            m.end = detail::parse_time(tokens[2], line_no);
            if (!(m.start < m.end)) throw ParseError(line_no, "start must precede end");
            for (std::size_t i = 3; i < tokens.size(); ++i) {
                int id = detail::parse_int(tokens[i], line_no, "character id");
                if (id < 1 || id > instance.num_characters)
                    throw ParseError(line_no, "character id out of range");
                m.participants.push_back(id);
            }
            std::vector<int> sorted = m.participants;
            std::sort(sorted.begin(), sorted.end());
            if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
                throw ParseError(line_no, "duplicate participant");
            instance.meetings.push_back(std::move(m));
        } else {
            throw ParseError(line_no, "unknown keyword '" + kw + "'");
        }
    }
    if (!seen_header) throw ParseError(line_no + 1, "missing 'storyline 1' header");
    if (!seen_chars) throw ParseError(line_no + 1, "missing 'chars' line");

    // Default lifespan for characters without one: the full event horizon.
    Time lo(0), hi(1);
    bool any_time = false;
    auto widen = [&](const Time& t) {
        if (!any_time) { lo = hi = t; any_time = true; return; }
        if (t < lo) lo = t;
        if (hi < t) hi = t;
    };
    for (const Meeting& m : instance.meetings) { widen(m.start); widen(m.end); }
    for (const auto& spans : instance.lifespans)
        for (const Lifespan& s : spans) { widen(s.birth); widen(s.death); }
    if (!any_time || !(lo < hi)) { lo = Time(0); hi = Time(1); }
    for (int c = 1; c <= instance.num_characters; ++c)
        if (!has_life[c - 1]) instance.lifespans[c - 1].push_back({lo, hi});

    instance.normalize();
    return instance;
}

inline StorylineInstance parse_instance(const std::string& text) {
    std::istringstream in(text);
    return parse_instance(in);
}

inline void write_instance(const StorylineInstance& instance, std::ostream& out) {
    out << "storyline 1\n";
    out << "chars " << instance.num_characters << "\n";
    for (int c = 1; c <= instance.num_characters; ++c)
        for (const Lifespan& span : instance.lifespans[c - 1])
            out << "life " << c << " " << span.birth.str() << " " << span.death.str() << "\n";
    for (const Meeting& m : instance.meetings) {
        out << "meet " << m.start.str() << " " << m.end.str();
        for (int c : m.participants) out << " " << c;
        out << "\n";
    }
}

inline std::string write_instance(const StorylineInstance& instance) {
    std::ostringstream out;
    write_instance(instance, out);
    return out.str();
}

}  // namespace storyline
