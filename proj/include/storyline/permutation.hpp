#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace storyline {

// Swap of the adjacent blocks at positions [a..b] and [b+1..c], positions
// 1-based with 1 <= a <= b < c <= size. There are C(size+1, 3) distinct
// moves on a permutation of `size` elements.
struct BlockMove {
    int a = 0;
    int b = 0;
    int c = 0;

    bool valid_for(int size) const { return 1 <= a && a <= b && b < c && c <= size; }

    // The move mapping the result back to the original permutation.
    BlockMove inverse() const { return {a, a + c - b - 1, c}; }

    friend bool operator==(const BlockMove& x, const BlockMove& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

inline std::uint64_t count_block_moves(int size) {
    // C(size+1, 3)
    std::uint64_t n = static_cast<std::uint64_t>(size) + 1;
    return n * (n - 1) * (n - 2) / 6;
}

inline std::vector<BlockMove> enumerate_block_moves(int size) {
    std::vector<BlockMove> moves;
    moves.reserve(count_block_moves(size));
    for (int a = 1; a <= size; ++a)
        for (int b = a; b < size; ++b)
            for (int c = b + 1; c <= size; ++c) moves.push_back({a, b, c});
    return moves;
}

template <typename T>
void apply_move_in_place(std::vector<T>& permutation, const BlockMove& move) {
    if (!move.valid_for(static_cast<int>(permutation.size())))
        throw std::out_of_range("BlockMove out of bounds");
    auto first = permutation.begin() + (move.a - 1);
    auto middle = permutation.begin() + move.b;
    auto last = permutation.begin() + move.c;
    std::rotate(first, middle, last);
}

template <typename T>
std::vector<T> apply_move(std::vector<T> permutation, const BlockMove& move) {
    apply_move_in_place(permutation, move);
    return permutation;
}

// Lehmer rank of a permutation of 1..size: the factorial-number-system
// index, a bijection onto 0..size!-1. Quadratic, which is fine for the
// sizes the flat-array search can hold in memory anyway.
inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline std::uint64_t lehmer_rank(const std::vector<int>& permutation) {
    const int n = static_cast<int>(permutation.size());
    std::uint64_t rank = 0;
    std::uint64_t base = factorial(n);
    for (int i = 0; i < n; ++i) {
        base /= (n - i);
        int smaller = 0;
        for (int j = i + 1; j < n; ++j)
            if (permutation[j] < permutation[i]) ++smaller;
        rank += smaller * base;
    }
    return rank;
}

inline std::vector<int> lehmer_unrank(std::uint64_t rank, int size) {
    std::vector<int> pool(size);
    for (int i = 0; i < size; ++i) pool[i] = i + 1;
    std::vector<int> permutation;
    permutation.reserve(size);
    std::uint64_t base = factorial(size);
    for (int i = 0; i < size; ++i) {
        base /= (size - i);
        std::uint64_t digit = rank / base;
        rank %= base;
        permutation.push_back(pool[digit]);
        pool.erase(pool.begin() + digit);
    }
    return permutation;
}

}  // namespace storyline
