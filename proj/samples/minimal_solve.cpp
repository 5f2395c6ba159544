// Smallest useful program: read an instance from stdin, find the optimal
// drawing, print the crossing counts and the solution file to stdout.
//
//   ./minimal_solve < ../tests/data/triangle.story

#include <iostream>

#include "storyline/storyline.hpp"

int main() {
    using namespace storyline;
    StorylineInstance instance = parse_instance(std::cin);
    for (const std::string& violation : validate(instance)) {
        std::cerr << "invalid instance: " << violation << "\n";
        return 1;
    }

    SearchResult result = find_min_lambda(instance);
    std::cerr << "lambda=" << result.lambda_opt << " bc=" << result.block_crossings
              << " cr=" << count_pairwise_crossings(result.solution) << "\n";
    std::cout << write_solution(result.solution);
    return 0;
}
