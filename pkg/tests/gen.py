"""Random inputs shared by the test modules."""
import numpy as np

RUNNING = [4, -1, 2, -6, 3]
# user values whose internal candidate list is (1,2) (3,4) (1,6) (1,8) (9,10) (9,11) (9,12)
NESTED = [5, -4, 2, -1, 4, -2, 3, -8, 1, 1, 1]
NESTED_EDGES = [(1, 2), (3, 4), (1, 6), (1, 8), (9, 10), (9, 11), (9, 12)]


def random_array(rng, max_n, lo=-20, hi=20):
    n = int(rng.integers(1, max_n + 1))
    return rng.integers(lo, hi + 1, n)


def adversarial(n):
    """Named arrays that stress ties and staircase shapes."""
    k = np.arange(n)
    return {
        "constant": np.full(n, 3),
        "zeros": np.zeros(n, np.int64),
        "alternating": np.where(k % 2 == 0, 1, -1),
        "sorted": k - n // 2,
        "descending": n // 2 - k,
        "spike": np.where(k == n // 2, 5, -1),
        "sawtooth": np.where(k % 7 == 6, -9, 2),
    }


def random_balanced(rng, pairs):
    """Uniform-ish random balanced parenthesis bits (1 = open)."""
    out = np.empty(2 * pairs, np.uint8)
    depth = 0
    opens = pairs
    for t in range(2 * pairs):
        if depth == 0 or (opens > 0 and rng.random() < 0.5):
            out[t] = 1
            opens -= 1
            depth += 1
        else:
            out[t] = 0
            depth -= 1
    return out


def stack_matches(bits):
    match = np.empty(len(bits), np.int64)
    st = []
    for p, b in enumerate(bits, 1):
        if b:
            st.append(p)
        else:
            q = st.pop()
            match[p - 1] = q
            match[q - 1] = p
    return match


def random_nested_edges(rng, n, m):
    """Up to ``m`` pairwise non-crossing edges on ``1..n`` (duplicates allowed)."""
    edges = []
    for _ in range(m):
        if n < 2:
            break
        if edges and rng.random() < 0.2:
            edges.append(edges[int(rng.integers(len(edges)))])
            continue
        a, b = sorted(rng.choice(np.arange(1, n + 1), 2, replace=False).tolist())
        if all(not (x < a < y < b or a < x < b < y) for x, y in edges):
            edges.append((a, b))
    return edges
