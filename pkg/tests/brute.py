"""Exhaustive, loop-only evaluation of the retrieval scores.

Written straight from the definitions with plain Python lists; shares
nothing with rtlnp.metrics or rtlnp.retrieval.
"""


def chi2(x, y):
    s = 0.0
    for a, b in zip(x, y):
        if a + b != 0:
            s += (a - b) ** 2 / (a + b)
    return s / 2


def normalize(h):
    t = sum(h)
    return [v / t for v in h] if t else [0.0] * len(h)


def rankings(features):
    """For each query, the other ids sorted by (distance, id)."""
    n = len(features)
    out = []
    for q in range(n):
        others = [(chi2(features[q], features[i]), i) for i in range(n) if i != q]
        others.sort()
        out.append([i for _, i in others])
    return out


def scores(features, labels, lambda_max, max_rank, denominator="literal"):
    n = len(labels)
    ranks = rankings(features)
    classes = sorted(set(labels))
    size = {c: labels.count(c) for c in classes}

    def hits(q, lam):
        return sum(1 for i in ranks[q][:lam] if labels[i] == labels[q])

    def macro(fn):
        per_class = []
        for c in classes:
            qs = [q for q in range(n) if labels[q] == c]
            per_class.append(sum(fn(q) for q in qs) / len(qs))
        return sum(per_class) / len(per_class)

    def den(q):
        return size[labels[q]] if denominator == "literal" else size[labels[q]] - 1

    own = lambda q: min(size[labels[q]], n - 1)
    res = {
        "arp_curve": [macro(lambda q, l=lam: hits(q, l) / l) for lam in range(1, lambda_max + 1)],
        "arr_curve": [macro(lambda q, l=lam: hits(q, l) / den(q)) for lam in range(1, lambda_max + 1)],
        "arp": macro(lambda q: hits(q, own(q)) / own(q)),
        "arr": macro(lambda q: hits(q, own(q)) / den(q)),
    }
    res["f_score"] = (2 * res["arp"] * res["arr"] / (res["arp"] + res["arr"])
                      if res["arp"] + res["arr"] > 0 else 0.0)

    # MPEG-7 ANMRR
    gtm = max(size[labels[q]] - 1 for q in range(n))
    total = 0.0
    for q in range(n):
        ng = size[labels[q]] - 1
        k = min(4 * ng, 2 * gtm)
        acc = 0.0
        for pos, i in enumerate(ranks[q], start=1):
            if labels[i] == labels[q]:
                acc += pos if pos <= k else 1.25 * k
        avr = acc / ng
        total += (avr - 0.5 * (1 + ng)) / (1.25 * k - 0.5 * (1 + ng))
    res["anmrr"] = total / n

    res["recognition_rate"] = 100.0 * sum(
        1 for q in range(n) if labels[ranks[q][0]] == labels[q]) / n
    cmc = []
    for r in range(1, max_rank + 1):
        found = sum(1 for q in range(n)
                    if any(labels[i] == labels[q] for i in ranks[q][:r]))
        cmc.append(100.0 * found / n)
    res["cmc"] = cmc
    return res
