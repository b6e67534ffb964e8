#include "tsopt/sparse.hpp"

#include <deque>
#include <numeric>

namespace tsopt {

std::shared_ptr<const SparsePattern> SparsePattern::from_adjacency(const std::vector<std::vector<int>>& neighbors) {
    auto p = std::make_shared<SparsePattern>();
    p->size = static_cast<int>(neighbors.size());
    p->row_start.assign(p->size + 1, 0);
    p->diag.assign(p->size, 0);
    for (int i = 0; i < p->size; ++i) {
        std::vector<int> row = neighbors[i];
        row.push_back(i);
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        for (int c : row) {
            if (c == i) p->diag[i] = static_cast<int>(p->cols.size());
            p->cols.push_back(c);
        }
        p->row_start[i + 1] = static_cast<int>(p->cols.size());
    }
    return p;
}

std::vector<int> reverse_cuthill_mckee(const SparsePattern& pattern) {
    const int n = pattern.size;
    auto degree = [&](int i) { return pattern.row_start[i + 1] - pattern.row_start[i]; };
    std::vector<int> order;
    order.reserve(n);
    std::vector<bool> seen(n, false);

    auto bfs = [&](int root, std::vector<int>& out) {
        std::deque<int> queue{root};
        seen[root] = true;
        while (!queue.empty()) {
            const int v = queue.front();
            queue.pop_front();
            out.push_back(v);
            std::vector<int> next;
            for (int p = pattern.row_start[v]; p < pattern.row_start[v + 1]; ++p) {
                const int w = pattern.cols[p];
                if (!seen[w]) {
                    seen[w] = true;
                    next.push_back(w);
                }
            }
            std::stable_sort(next.begin(), next.end(), [&](int a, int b) { return degree(a) < degree(b); });
            for (int w : next) queue.push_back(w);
        }
    };

    for (int start = 0; start < n; ++start) {
        if (seen[start]) continue;
        // Pseudo-peripheral root: last node of a BFS from the lowest-degree unvisited node.
        int root = start;
        for (int i = start; i < n; ++i)
            if (!seen[i] && degree(i) < degree(root)) root = i;
        std::vector<int> probe;
        std::vector<bool> saved = seen;
        bfs(root, probe);
        seen = saved;
        root = probe.back();
        bfs(root, order);
    }
    std::reverse(order.begin(), order.end());
    return order;
}

}  // namespace tsopt
