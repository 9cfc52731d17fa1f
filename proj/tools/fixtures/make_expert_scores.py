#!/usr/bin/env python3
"""Writes data/scores/expert_scores.csv.

Two raters per APTC: an expert and an LLM-assisted expert. The LLM-assisted
rater approves everything the expert approved plus a few extra APTCs, so the
AND rule yields exactly the expert's counts below.
"""
import pathlib
import sys

WEAKNESSES = ["CWE-284", "CWE-285", "CWE-862", "CWE-863", "CWE-272"]
CASES = ["Maintenance", "PowerGrid", "Bank"]
MODELS = ["GPT-5.2", "Gemini-3-Pro"]
STRATEGIES = ["zero-shot", "one-shot", "few-shot"]

# (model, strategy) -> (correctness per case, usefulness per case)
COUNTS = {
    ("GPT-5.2", "zero-shot"): ((2, 3, 4), (5, 4, 4)),
    ("Gemini-3-Pro", "zero-shot"): ((4, 2, 4), (3, 2, 5)),
    ("GPT-5.2", "one-shot"): ((4, 3, 4), (4, 3, 4)),
    ("Gemini-3-Pro", "one-shot"): ((5, 4, 4), (5, 5, 4)),
    ("GPT-5.2", "few-shot"): ((4, 4, 3), (4, 4, 4)),
    ("Gemini-3-Pro", "few-shot"): ((2, 2, 2), (2, 5, 3)),
}


def expert_bits(k, offset):
    return [1 if (i - offset) % 5 < k else 0 for i in range(5)]


def main(out):
    lines = [
        "# Expert scores for the evaluation table.",
        "# unify=and",
        "model,strategy,case_study,weakness,metric_correctness,metric_usefulness,rater,method",
    ]
    for si, strategy in enumerate(STRATEGIES):
        for mi, model in enumerate(MODELS):
            correct, useful = COUNTS[(model, strategy)]
            for ci, case in enumerate(CASES):
                c_off = (mi * 7 + si * 3 + ci * 5) % 5
                u_off = (mi * 7 + si * 3 + ci * 5 + 2) % 5
                c = expert_bits(correct[ci], c_off)
                u = expert_bits(useful[ci], u_off)
                c_llm, u_llm = list(c), list(u)
                if correct[ci] < 5 and (ci + si) % 2 == 0:
                    c_llm[(c_off + correct[ci]) % 5] = 1
                if useful[ci] < 5 and (ci + si + mi) % 2 == 1:
                    u_llm[(u_off + useful[ci]) % 5] = 1
                for wi, w in enumerate(WEAKNESSES):
                    lines.append(f"{model},{strategy},{case},{w},{c[wi]},{u[wi]},expert-1,expert")
                    lines.append(f"{model},{strategy},{case},{w},{c_llm[wi]},{u_llm[wi]},expert-2,llm-assisted")
    pathlib.Path(out).write_text("\n".join(lines) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/scores/expert_scores.csv")
