#pragma once

#include <sstream>
#include <stdexcept>
#include <string>

#include "storyline/solution.hpp"

namespace storyline {

struct LayoutConfig {
    enum class CurveStyle { orthogonal_with_diagonals, straight };

    int column_width = 60;
    int row_height = 26;
    CurveStyle curve_style = CurveStyle::orthogonal_with_diagonals;
    std::string meeting_fill = "#d4d4d4";
    std::vector<std::string> palette = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                        "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
};

// Draws the solution as columns of character positions connected by
// x-monotone polylines: one column per permutation, uniformly spaced (the
// drawing reflects event order, not absolute time). Meetings are gray
// rectangles behind their characters, one per spanned column; characters
// leave a gap while dead. Inadmissible solutions are rejected, and output
// is byte-stable: integer coordinates only.
inline std::string render_svg(const StorylineInstance& instance,
                              const MeetingGroupSequence& groups, const Solution& solution,
                              const LayoutConfig& layout = {}) {
    if (layout.column_width < 10 || layout.row_height < 4 || layout.palette.empty())
        throw std::invalid_argument("render_svg: degenerate layout");
    if (auto violation = verify_solution(groups, solution))
        throw std::invalid_argument("render_svg: inadmissible solution: " + *violation);

    const int lambda = solution.lambda();
    const int k = instance.num_characters;
    const int margin = 2 * layout.row_height;
    const int body = layout.column_width * 3 / 5;
    const int width = 2 * margin + lambda * layout.column_width;
    const int height = 2 * margin + (k > 0 ? k - 1 : 0) * layout.row_height;

    auto column_left = [&](int r) { return margin + r * layout.column_width; };  // r 0-based
    auto column_right = [&](int r) { return column_left(r) + body; };
    auto column_center = [&](int r) { return column_left(r) + body / 2; };

    // rank_of[r][c] = 0-based row of character c in permutation r, or -1.
    std::vector<std::vector<int>> rank_of(lambda, std::vector<int>(k + 1, -1));
    for (int r = 0; r < lambda; ++r)
        for (std::size_t i = 0; i < solution.permutations[r].size(); ++i)
            rank_of[r][solution.permutations[r][i]] = static_cast<int>(i);
    auto row_y = [&](int rank) { return margin + rank * layout.row_height; };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";

    // Meeting rectangles first, behind the curves: for each meeting, one
    // rect per column of a group containing it.
    const int vpad = layout.row_height * 2 / 5;
    const int hpad = layout.column_width / 10;
    std::vector<std::pair<int, int>> drawn;  // (meeting id, column)
    for (std::size_t l = 0; l < groups.size(); ++l) {
        const MeetingGroup& group = groups.groups[l];
        int column = solution.assignment[l] - 1;
        for (std::size_t s = 0; s < group.member_sets.size(); ++s) {
            if (group.meeting_ids[s].empty()) continue;
            for (int meeting_id : group.meeting_ids[s]) {
                if (std::find(drawn.begin(), drawn.end(), std::make_pair(meeting_id, column)) !=
                    drawn.end())
                    continue;
                drawn.emplace_back(meeting_id, column);
                int lo = k, hi = -1;
                for (int c : group.member_sets[s]) {
                    lo = std::min(lo, rank_of[column][c]);
                    hi = std::max(hi, rank_of[column][c]);
                }
                svg << "  <rect data-meeting=\"" << meeting_id + 1 << "\" x=\""
                    << column_left(column) - hpad << "\" y=\"" << row_y(lo) - vpad << "\" width=\""
                    << body + 2 * hpad << "\" height=\"" << (hi - lo) * layout.row_height + 2 * vpad
                    << "\" fill=\"" << layout.meeting_fill << "\"/>\n";
            }
        }
    }

    // Character curves: one polyline per maximal run of columns containing
    // the character, broken at death and resumed at birth.
    for (int c = 1; c <= k; ++c) {
        const std::string& color = layout.palette[(c - 1) % layout.palette.size()];
        int run_start = -1;
        for (int r = 0; r <= lambda; ++r) {
            bool present = r < lambda && rank_of[r][c] >= 0;
            if (present && run_start < 0) run_start = r;
            if (!present && run_start >= 0) {
                std::string points;
                auto add_point = [&](int x, int y) {
                    if (!points.empty()) points += " ";
                    points += std::to_string(x) + "," + std::to_string(y);
                };
                for (int col = run_start; col < r; ++col) {
                    int y = row_y(rank_of[col][c]);
                    if (layout.curve_style == LayoutConfig::CurveStyle::straight) {
                        add_point(column_center(col), y);
                    } else {
                        add_point(column_left(col), y);
                        add_point(column_right(col), y);
                    }
                }
                svg << "  <polyline data-char=\"" << c << "\" points=\"" << points
                    << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
                int label_y = row_y(rank_of[run_start][c]);
                svg << "  <text data-char=\"" << c << "\" x=\"" << column_left(run_start) - hpad - 2
                    << "\" y=\"" << label_y + layout.row_height / 6
                    << "\" text-anchor=\"end\" font-size=\"" << layout.row_height / 2 << "\">" << c
                    << "</text>\n";
                run_start = -1;
            }
        }
    }

    svg << "</svg>\n";
    return svg.str();
}

inline std::string render_svg(const StorylineInstance& instance, const Solution& solution,
                              const LayoutConfig& layout = {}) {
    return render_svg(instance, build_meeting_groups(instance), solution, layout);
}

}  // namespace storyline
