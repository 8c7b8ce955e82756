#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include "ghzw/error.hpp"
#include "ghzw/gaussian_rational.hpp"

namespace ghzw {

// Coefficient of y^m in prod_{i=1..N} 1/(1 - y^i): partitions of m into parts
// of size at most N.
inline BigInt gf_coefficient(int n, int m) {
    if (n < 1 || m < 0) throw DomainError("gf_coefficient needs N >= 1 and m >= 0");
    static std::shared_mutex mutex;
    static std::map<std::pair<int, int>, BigInt> memo;
    const auto key = std::make_pair(n, m);
    {
        std::shared_lock lock(mutex);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    std::vector<BigInt> ways(static_cast<std::size_t>(m) + 1, 0);
    ways[0] = 1;
    for (int part = 1; part <= std::min(n, std::max(m, 1)); ++part) {
        for (int s = part; s <= m; ++s) ways[s] += ways[s - part];
    }
    BigInt result = ways[m];
    std::unique_lock lock(mutex);
    memo.emplace(key, result);
    return result;
}

// Partitions of m with every part >= 2.
inline BigInt count_parts_ge2(int m) {
    if (m < 0) throw DomainError("count_parts_ge2 needs m >= 0");
    if (m == 0) return 1;
    if (m == 1) return 0;
    return gf_coefficient(m, m) - gf_coefficient(m - 1, m - 1);
}

// L = sum_{k=2}^{N-2} c(k) c(N-k) + 2 c(N), c = count_parts_ge2.
inline BigInt count_main_partitions(int n) {
    if (n < 4) throw DomainError("count_main_partitions needs N >= 4");
    BigInt total = 0;
    for (int k = 2; k <= n - 2; ++k) total += count_parts_ge2(k) * count_parts_ge2(n - k);
    return total + 2 * count_parts_ge2(n);
}

struct PartitionSkeleton {
    std::vector<int> ghz;  // descending
    std::vector<int> w;    // descending

    int ghz_total() const {
        int s = 0;
        for (int v : ghz) s += v;
        return s;
    }
    int w_total() const {
        int s = 0;
        for (int v : w) s += v;
        return s;
    }
    int total() const { return ghz_total() + w_total(); }
    std::size_t group_count() const { return ghz.size() + w.size(); }

    std::string to_string() const {
        auto side = [](const std::vector<int>& parts) {
            if (parts.empty()) return std::string("-");
            std::string s;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) s += '+';
                s += std::to_string(parts[i]);
            }
            return s;
        };
        return "G:" + side(ghz) + " | W:" + side(w);
    }

    friend bool operator==(const PartitionSkeleton&, const PartitionSkeleton&) = default;
};

// All partitions of m into parts >= 2, each descending, in descending lex order.
inline std::vector<std::vector<int>> partitions_min2(int m) {
    std::vector<std::vector<int>> out;
    if (m == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int max_part) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int part = std::min(rest, max_part); part >= 2; --part) {
            cur.push_back(part);
            self(self, rest - part, part);
            cur.pop_back();
        }
    };
    rec(rec, m, m);
    return out;
}

struct SkeletonOptions {
    bool ghz_only = false;
    bool w_only = false;
    bool allow_single_group = true;
};

// Skeletons in canonical order: GHZ total descending, then parts in
// descending lex order on each side.
inline std::vector<PartitionSkeleton> enumerate_skeletons(int n, SkeletonOptions opts = {}) {
    if (n < 2) throw DomainError("enumerate_skeletons needs N >= 2");
    if (opts.ghz_only && opts.w_only) throw ContractError("ghz-only and w-only are exclusive");
    std::vector<PartitionSkeleton> out;
    for (int g = n; g >= 0; --g) {
        const int w = n - g;
        if (opts.ghz_only && w != 0) continue;
        if (opts.w_only && g != 0) continue;
        if (g == 1 || w == 1) continue;
        for (const auto& gp : partitions_min2(g)) {
            for (const auto& wp : partitions_min2(w)) {
                PartitionSkeleton s{gp, wp};
                if (!opts.allow_single_group && s.group_count() < 2) continue;
                out.push_back(std::move(s));
            }
        }
    }
    return out;
}

}  // namespace ghzw
