#!/usr/bin/env python3
"""Regenerate data/*.jsonl from PARI/GP (via cypari2).

newforms_k{k}.jsonl   one record per complex embedding of each newform in S_k(Gamma_0(N))
reference_k{k}.jsonl  central values, twisted central values, Petersson norms, root numbers

Petersson norms are the integral over Gamma_0(N)\\H (PARI's mfpetersson times the index N + 1).
"""

import argparse
import json
import pathlib

import cypari2

SCHEMA_VERSION = 1


def is_prime(n):
    return n > 1 and all(n % d for d in range(2, int(n**0.5) + 1))


def to_json_number(x, digits):
    x = complex(x)
    if abs(x.imag) > 1e-12 * max(1.0, abs(x.real)):
        raise ValueError(f"non-real coefficient {x}")
    r = round(x.real)
    if abs(x.real - r) < 1e-9:
        return int(r)
    return f"{x.real:.{digits}g}"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--weight", type=int, default=4)
    ap.add_argument("--max-level", type=int, default=60)
    ap.add_argument("--ncoeffs", type=int, default=1000)
    ap.add_argument("--twist", type=int, default=-4)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parent.parent / "data"))
    args = ap.parse_args()

    pari = cypari2.Pari()
    pari.allocatemem(4 * 10**9)
    pari.set_real_precision(40)
    k, D = args.weight, args.twist
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    forms, refs = [], []
    for N in range(2, args.max_level + 1):
        if not is_prime(N):
            continue
        pari(f"mf = mfinit([{N}, {k}], 0); B = mfeigenbasis(mf);")
        nf = int(pari("#B"))
        for i in range(1, nf + 1):
            letter = chr(ord("a") + i - 1)
            pari(f"F = B[{i}]; d = poldegree(mffields(mf)[{i}]); C = mfembed(F, mfcoefs(F, {args.ncoeffs}));")
            pari("L = lfunmf(mf, F); P = mfpetersson(mfsymbol(mf, F));")
            pari("if (d == 1, C = [C]; L = [L]; P = matrix(1, 1, a, b, P));")
            ne = int(pari("#C"))
            for e in range(1, ne + 1):
                coeffs = [to_json_number(c, 20) for c in pari(f"C[{e}]")[1:]]
                cN = float(pari(f"real(C[{e}][{N + 1}])"))
                w = round(-cN / N ** (k / 2 - 1))
                label = f"{N}.{k}.{letter}.{e}"
                forms.append({"schema_version": SCHEMA_VERSION, "level": N, "weight": k, "label": label,
                              "atkin_lehner": w, "coeffs": coeffs})
                L = f"L[{e}]"
                refs.append({
                    "schema_version": SCHEMA_VERSION,
                    "label": label,
                    "central_value": f"{float(pari(f'real(lfun({L}, {k // 2}))')):.17g}",
                    "twist": D,
                    "twisted_central_value": f"{float(pari(f'real(lfun(lfuntwist({L}, {D}), {k // 2}))')):.17g}",
                    "petersson": f"{float(pari(f'real(P[{e}, {e}])')) * (N + 1):.17g}",
                    "root_number": int(round(float(pari(f"real(lfunrootres({L})[3])")))),
                })
        print(f"N = {N}: {nf} orbit(s)", flush=True)

    with open(out / f"newforms_k{k}.jsonl", "w") as fh:
        for r in forms:
            fh.write(json.dumps(r, separators=(",", ":")) + "\n")
    with open(out / f"reference_k{k}.jsonl", "w") as fh:
        for r in refs:
            fh.write(json.dumps(r, separators=(",", ":")) + "\n")


if __name__ == "__main__":
    main()
