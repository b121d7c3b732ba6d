"""Regenerates the test corpora under crates/core/tests/data.

Every 2-edge-connected cubic multigraph arises from the theta graph by
repeated edge insertion (subdivide two edges, or one edge twice, and join
the new vertices). Levels are deduplicated with nauty certificates of the
vertex/edge incidence graph.

    pip install pynauty networkx
    cd crates/core/tests/data && python3 ../../../../scripts/gen_corpus.py 14
"""
import sys, pynauty, networkx as nx

def cert(n, edges):
    # incidence graph: vertices 0..n-1, edge nodes n..n+m-1
    m = len(edges)
    adj = {v: [] for v in range(n + m)}
    for k, (u, v) in enumerate(edges):
        adj[n + k] += [u, v]
    g = pynauty.Graph(n + m, directed=False, adjacency_dict=adj,
                      vertex_coloring=[set(range(n)), set(range(n, n + m))])
    return pynauty.certificate(g)

def inserts(n, edges):
    m = len(edges)
    x, y = n, n + 1
    for i in range(m):
        for j in range(i, m):
            rest = [e for k, e in enumerate(edges) if k not in (i, j)]
            if i == j:
                a, b = edges[i]
                yield n + 2, rest + [(a, x), (x, y), (y, b), (x, y)]
            else:
                (a, b), (c, d) = edges[i], edges[j]
                yield n + 2, rest + [(a, x), (x, b), (c, y), (y, d), (x, y)]

level = [(2, [(0, 1), (0, 1), (0, 1)])]
maxn = int(sys.argv[1])
allg = {2: level}
n = 2
while n + 2 <= maxn:
    seen = {}
    for (k, es) in allg[n]:
        for (k2, es2) in inserts(k, es):
            c = cert(k2, es2)
            if c not in seen:
                seen[c] = (k2, es2)
    n += 2
    allg[n] = list(seen.values())
    simple = [g for g in allg[n] if len(set(tuple(sorted(e)) for e in g[1])) == len(g[1])]
    print(n, len(allg[n]), len(simple), file=sys.stderr, flush=True)

with open('bridgeless_cubic_n4_14.g6', 'w') as f:
    for n in sorted(allg):
        for (k, es) in allg[n]:
            if len(set(tuple(sorted(e)) for e in es)) != len(es):
                continue
            G = nx.Graph(); G.add_nodes_from(range(k)); G.add_edges_from(es)
            assert nx.is_connected(G) and nx.has_bridges(G) is False
            f.write(nx.to_graph6_bytes(G, header=False).decode())
with open('bridgeless_cubic_multi_m16.txt', 'w') as f:
    for n in sorted(allg):
        for (k, es) in allg[n]:
            if len(es) > 16:
                continue
            f.write(','.join(f"{u} {v}" for u, v in es) + '\n')
