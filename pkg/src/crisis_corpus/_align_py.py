"""Pure-Python alignment DP, used when the compiled kernel is unavailable."""
import math

from ._cost import MOVES, NEG_LOG_PRIOR, length_penalty


def align_lengths(src_lens, tgt_lens, allow_22=True, c=1.0, s2=6.8):
    """Minimum-cost monotonic bead cover over two length sequences.

    Returns ``(total_cost, moves)`` where ``moves`` lists (n_src, n_tgt) per bead.
    """
    m, n = len(src_lens), len(tgt_lens)
    src_pre = [0]
    for x in src_lens:
        src_pre.append(src_pre[-1] + x)
    tgt_pre = [0]
    for x in tgt_lens:
        tgt_pre.append(tgt_pre[-1] + x)
    moves = [mv for mv in MOVES if allow_22 or mv != (2, 2)]
    priors = [NEG_LOG_PRIOR[mv] for mv in moves]

    inf = math.inf
    cost = [[inf] * (n + 1) for _ in range(m + 1)]
    back = [[-1] * (n + 1) for _ in range(m + 1)]
    cost[0][0] = 0.0
    for i in range(m + 1):
        row = cost[i]
        for j in range(n + 1):
            if i == 0 and j == 0:
                continue
            best, best_k = inf, -1
            for k, (di, dj) in enumerate(moves):
                pi, pj = i - di, j - dj
                if pi < 0 or pj < 0:
                    continue
                prev = cost[pi][pj]
                if prev == inf:
                    continue
                bead = priors[k] + length_penalty(src_pre[i] - src_pre[pi], tgt_pre[j] - tgt_pre[pj], c, s2)
                total = prev + bead
                if total < best:
                    best, best_k = total, k
            row[j] = best
            back[i][j] = best_k

    path = []
    i, j = m, n
    while i or j:
        mv = moves[back[i][j]]
        path.append(mv)
        i, j = i - mv[0], j - mv[1]
    path.reverse()
    return cost[m][n], path
