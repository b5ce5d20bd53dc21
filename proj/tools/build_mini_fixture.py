#!/usr/bin/env python3
# Copyright 2026 The ConVerTest Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Builds the bundled mini-benchmark.

Writes three files under data/:
  mini_benchmark.jsonl  ten tasks with ground truth
  mini_mock.json        scripted model responses for the mock provider
  mini_exec.json        outcome table for the simulated executor

The outcome table is produced by actually running every (solution, test)
pair that the scripted runs can produce, plus every ground-truth mutant,
under line tracing. Test and candidate texts are collected by running
`convertest generate` against the mock script, so the table always covers
exactly what the pipeline executes.

Usage: build_mini_fixture.py --convertest build/tools/convertest
"""

import argparse
import io
import json
import os
import signal
import subprocess
import sys
import tempfile
import tokenize
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "data"

M, N, Z, MAX_ROUNDS = 3, 3, 3, 3

# Each task: ground truth, two buggy implementations, three stub calls, the
# pattern of valid (V) / invalid (I) completions per stub, the holistic
# file's validity per test, and how the third CoVe chain ends.
TASKS = [
    dict(
        id="mini/absolute_difference",
        entry="absolute_difference",
        signature="def absolute_difference(a: int, b: int) -> int",
        description="Return the absolute difference between two integers a and b.",
        truth="""def absolute_difference(a, b):
    \"\"\"Distance between a and b on the number line.\"\"\"
    if a > b:
        return a - b
    return b - a
""",
        bug1="""def absolute_difference(a, b):
    return a - b
""",
        bug2="""def absolute_difference(a, b):
    if a >= b:
        return a - b
    return a - b
""",
        calls=["7, 3", "3, 7", "-2, 5"],
        sc=["VVV", "IIV", "VVI"],
        htg="VII",
        cove_end="correct",
    ),
    dict(
        id="mini/is_leap_year",
        entry="is_leap_year",
        signature="def is_leap_year(year: int) -> bool",
        description=(
            "Return True if year is a leap year in the Gregorian calendar: "
            "divisible by 4, except years divisible by 100 unless they are "
            "also divisible by 400."
        ),
        truth="""def is_leap_year(year):
    if year % 400 == 0:
        return True
    if year % 100 == 0:
        return False
    return year % 4 == 0
""",
        bug1="""def is_leap_year(year):
    return year % 4 == 0
""",
        bug2="""def is_leap_year(year):
    return year % 4 == 0 and year % 100 != 0
""",
        calls=["2024", "1900", "2000"],
        sc=["VVI", "VVV", "IIV"],
        htg="VVI",
        cove_end="correct",
    ),
    dict(
        id="mini/count_vowels",
        entry="count_vowels",
        signature="def count_vowels(text: str) -> int",
        description=(
            "Count the vowels (a, e, i, o, u) in text, ignoring case. "
            "The letter y is not a vowel."
        ),
        truth="""def count_vowels(text):
    total = 0
    for ch in text.lower():
        if ch in "aeiou":
            total += 1
    return total
""",
        bug1="""def count_vowels(text):
    return sum(1 for ch in text if ch in "aeiou")
""",
        bug2="""def count_vowels(text):
    return sum(1 for ch in text.lower() if ch in "aeiouy")
""",
        calls=['"hello"', '"AEIOU xyz"', '"rhythm"'],
        sc=["IVV", "IIV", "VVV"],
        htg="VII",
        cove_end="correct",
    ),
    dict(
        id="mini/running_max",
        entry="running_max",
        signature="def running_max(values: list[int]) -> list[int]",
        description=(
            "Return a list whose i-th element is the maximum of values[0..i]. "
            "An empty input gives an empty list."
        ),
        truth="""def running_max(values):
    result = []
    best = None
    for v in values:
        if best is None or v > best:
            best = v
        result.append(best)
    return result
""",
        bug1="""def running_max(values):
    result = []
    best = 0
    for v in values:
        best = max(best, v)
        result.append(best)
    return result
""",
        bug2="""def running_max(values):
    return sorted(values)
""",
        calls=["[1, 3, 2, 5]", "[-3, -1, -2]", "[]"],
        sc=["VVV", "VVI", "IIV"],
        htg="VVI",
        cove_end="bug2",
    ),
    dict(
        id="mini/fizzbuzz_label",
        entry="fizzbuzz_label",
        signature="def fizzbuzz_label(n: int) -> str",
        description=(
            'Return "FizzBuzz" if n is divisible by 15, "Fizz" if divisible '
            'by 3, "Buzz" if divisible by 5, and str(n) otherwise.'
        ),
        truth="""def fizzbuzz_label(n):
    if n % 15 == 0:
        return "FizzBuzz"
    if n % 3 == 0:
        return "Fizz"
    if n % 5 == 0:
        return "Buzz"
    return str(n)
""",
        bug1="""def fizzbuzz_label(n):
    if n % 3 == 0:
        return "Fizz"
    if n % 5 == 0:
        return "Buzz"
    return str(n)
""",
        bug2="""def fizzbuzz_label(n):
    for d, word in ((3, "Fizz"), (5, "Buzz")):
        if n % d == 0:
            return word
    return str(n)
""",
        calls=["15", "9", "10"],
        sc=["IIV", "VVV", "IVV"],
        htg="VII",
        cove_end="correct",
    ),
    dict(
        id="mini/clamp",
        entry="clamp",
        signature="def clamp(value: int, low: int, high: int) -> int",
        description="Clamp value into the closed interval [low, high].",
        truth="""def clamp(value, low, high):
    if value < low:
        return low
    if value > high:
        return high
    return value
""",
        bug1="""def clamp(value, low, high):
    if value < low:
        return low
    return value
""",
        bug2="""def clamp(value, low, high):
    return min(low, max(value, high))
""",
        calls=["5, 0, 10", "-3, 0, 10", "42, 0, 10"],
        sc=["VVV", "IVV", "VVV"],
        htg="VVI",
        cove_end="correct",
    ),
    dict(
        id="mini/reverse_words",
        entry="reverse_words",
        signature="def reverse_words(sentence: str) -> str",
        description=(
            "Reverse the order of the whitespace-separated words in sentence "
            "and join them with single spaces."
        ),
        truth="""def reverse_words(sentence):
    words = sentence.split()
    return " ".join(reversed(words))
""",
        bug1="""def reverse_words(sentence):
    return sentence[::-1]
""",
        bug2="""def reverse_words(sentence):
    return " ".join(sentence.split()[::-1][1:])
""",
        setup="import string",
        calls=['"hello world"', '"a b c"', '"single"'],
        sc=["VVI", "IIV", "VVV"],
        htg="VII",
        cove_end="correct",
    ),
    dict(
        id="mini/sum_of_squares",
        entry="sum_of_squares",
        signature="def sum_of_squares(n: int) -> int",
        description="Return 1*1 + 2*2 + ... + n*n for n >= 0.",
        truth="""def sum_of_squares(n):
    total = 0
    for i in range(1, n + 1):
        total += i * i
    return total
""",
        bug1="""def sum_of_squares(n):
    return sum(i * i for i in range(n))
""",
        bug2="""def sum_of_squares(n):
    total = 0
    for i in range(1, n):
        total += i * i
    return total
""",
        calls=["3", "1", "0"],
        sc=["IIV", "VVV", "VVV"],
        htg="VVI",
        cove_end="correct",
    ),
    dict(
        id="mini/first_duplicate",
        entry="first_duplicate",
        signature="def first_duplicate(items: list) -> object",
        description=(
            "Return the first element of items whose value has already "
            "appeared earlier in the list, or None when all values are "
            "distinct."
        ),
        truth="""def first_duplicate(items):
    seen = set()
    for item in items:
        if item in seen:
            return item
        seen.add(item)
    return None
""",
        bug1="""def first_duplicate(items):
    for item in items:
        if items.count(item) > 1:
            return item
    return None
""",
        bug2="""def first_duplicate(items):
    seen = set()
    for item in items:
        if item in seen:
            return item
        seen.add(item)
    return -1
""",
        calls=["[1, 2, 3, 2, 1]", "[5, 5]", "[1, 2, 3]"],
        sc=["VVV", "VVV", "IVV"],
        htg="VII",
        cove_end="bug2",
    ),
    dict(
        id="mini/celsius_to_fahrenheit",
        entry="celsius_to_fahrenheit",
        signature="def celsius_to_fahrenheit(c: float) -> float",
        description="Convert a temperature from degrees Celsius to degrees Fahrenheit.",
        truth="""def celsius_to_fahrenheit(c):
    return c * 9 / 5 + 32
""",
        bug1="""def celsius_to_fahrenheit(c):
    return c * 5 / 9 + 32
""",
        bug2="""def celsius_to_fahrenheit(c):
    return (c + 32) * 9 / 5
""",
        setup="import math",
        assertion="assert math.isclose({v}, {e})",
        calls=["100", "0", "-40"],
        sc=["VVV", "IIV", "VVI"],
        htg="VVI",
        cove_end="correct",
    ),
]


# ---- execution ----

class _Timeout(Exception):
    pass


def _alarm(signum, frame):
    raise _Timeout()


def execute(solution, setup, test, timeout_ms=2000):
    """Runs solution + setup + test; calls every top-level test* function."""
    covered = set()

    def tracer(frame, event, arg):
        if frame.f_code.co_filename == "<solution>":
            if event in ("call", "line"):
                if event == "line":
                    covered.add(frame.f_lineno)
            return tracer
        return None

    namespace = {"__name__": "__convertest__"}
    status, diagnostic = "pass", ""
    old = signal.signal(signal.SIGALRM, _alarm)
    signal.setitimer(signal.ITIMER_REAL, timeout_ms / 1000.0)
    sys.settrace(tracer)
    try:
        exec(compile(solution, "<solution>", "exec"), namespace)
        if setup:
            exec(compile(setup, "<setup>", "exec"), namespace)
        exec(compile(test, "<test>", "exec"), namespace)
        for name, fn in list(namespace.items()):
            if name.startswith("test") and callable(fn):
                fn()
    except _Timeout:
        status, diagnostic = "timeout", "timed out"
    except AssertionError as e:
        status, diagnostic = "fail", ("AssertionError: " + str(e)).strip()
    except Exception as e:  # noqa: BLE001 - any other exception is an error
        status, diagnostic = "error", f"{type(e).__name__}: {e}"
    finally:
        sys.settrace(None)
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)
    lines = solution.count("\n") + (0 if solution.endswith("\n") else 1)
    return {
        "status": status,
        "covered_lines": sorted(l for l in covered if 1 <= l <= lines),
        "wall_ms": 0,
        "diagnostic": diagnostic[:200],
    }


def call(solution, entry, args):
    namespace = {}
    exec(solution, namespace)
    return eval(f"{entry}({args})", namespace)


# ---- mutation ----

SWAPS = {
    "+": ("arith", "-"), "-": ("arith", "+"), "*": ("arith", "/"), "/": ("arith", "*"),
    "<": ("rel", "<="), "<=": ("rel", "<"), ">": ("rel", ">="), ">=": ("rel", ">"),
    "==": ("rel", "!="), "!=": ("rel", "=="),
}


def mutants(source):
    """One mutant per site: arithmetic and relational swaps, boolean flips,
    integer c -> c + 1. Sites in source order."""
    tokens = list(tokenize.generate_tokens(io.StringIO(source).readline))
    lines = source.splitlines(keepends=True)
    out = []
    counters = {}
    for tok in tokens:
        replacement = None
        if tok.type == tokenize.OP and tok.string in SWAPS:
            tag, replacement = SWAPS[tok.string]
        elif tok.type == tokenize.NAME and tok.string in ("True", "False"):
            tag, replacement = "bool", "False" if tok.string == "True" else "True"
        elif tok.type == tokenize.NUMBER and tok.string.isdigit():
            tag, replacement = "int", str(int(tok.string) + 1)
        if replacement is None:
            continue
        (row, col), (erow, ecol) = tok.start, tok.end
        if row != erow:
            continue
        line = lines[row - 1]
        mutated = lines[:]
        mutated[row - 1] = line[:col] + replacement + line[ecol:]
        ordinal = counters.get(tag, 0)
        counters[tag] = ordinal + 1
        out.append({
            "mutant_id": f"{tag}-{ordinal}",
            "source": "".join(mutated),
            "operator": f"{tok.string} -> {replacement}",
            "location": f"{row}:{col + 1}",
        })
    return out


# ---- mock script ----

def perturb(value):
    if isinstance(value, bool):
        return not value
    if isinstance(value, (int, float)):
        return value + 1
    if isinstance(value, str):
        return value + "!"
    if isinstance(value, list):
        return value + [0]
    return 0


def fence(code):
    return "```python\n" + code.rstrip("\n") + "\n```\n"


def slug(task):
    return task["entry"]


def expectations(task):
    """(expected, wrong) literals per call; wrong follows the first buggy
    implementation when it disagrees with the truth."""
    out = []
    for args in task["calls"]:
        good = call(task["truth"], task["entry"], args)
        bad = call(task["bug1"], task["entry"], args)
        if bad == good:
            bad = perturb(good)
        out.append((repr(good), repr(bad)))
    return out


def assertion(task, var, expected):
    template = task.get("assertion", "assert {v} == {e}")
    return template.format(v=var, e=expected)


def stub_source(task, j):
    return f"def test_{slug(task)}_{j}():\n    result = {task['entry']}({task['calls'][j]})\n"


def completion(task, j, expected, variant):
    name = f"test_{slug(task)}_{j}"
    call_expr = f"{task['entry']}({task['calls'][j]})"
    if variant == 0:
        return f"def {name}():\n    result = {call_expr}\n    {assertion(task, 'result', expected)}\n"
    return (f"def {name}():\n    # expected value from the description\n"
            f"    out = {call_expr}\n    {assertion(task, 'out', expected)}\n")


def holistic(task, exp):
    parts = []
    for k, (args, (good, bad)) in enumerate(zip(task["calls"], exp)):
        value = good if task["htg"][k] == "V" else bad
        parts.append(f"def test_{slug(task)}_h{k}():\n"
                     f"    {assertion(task, task['entry'] + '(' + args + ')', value)}\n")
    header = (task.get("setup", "") + "\n\n") if task.get("setup") else ""
    return header + "\n\n".join(parts)


def marker(task, z, r):
    return f"# rev {slug(task)}.{z}.{r}"


def version(task, code, z, r):
    return marker(task, z, r) + "\n" + code


def chains(task):
    """Source versions per CoVe chain; every version but the last is
    reported defective, except the clean first chain."""
    t, b1, b2 = task["truth"], task["bug1"], task["bug2"]
    end = t if task["cove_end"] == "correct" else b2
    return [
        [t],
        [b1, t],
        [b2, b2, b1, end],
    ]


PLAN = """1. [correctness] Does the function return the documented result for typical inputs?
2. [logic] Is every branch of the control flow reachable and correct?
3. [edge_case] What happens for boundary inputs such as zero, empty or negative values?
4. [constraint] Does the code respect the signature and the stated constraints?
5. [robustness] Does the code avoid crashing on unusual but valid inputs?
"""


def answers(defect):
    rows = [
        "ANSWER 1: The main path computes the documented result.",
        "ANSWER 2: The branches are consistent with the description.",
        ("ANSWER 3: ISSUE: " + defect) if defect else
        "ANSWER 3: Boundary inputs are handled.",
        "ANSWER 4: The signature matches.",
        "ANSWER 5: No crash on valid inputs.",
    ]
    return "\n".join(rows) + "\n"


def mock_rules(task):
    rules = []
    exp = expectations(task)
    for j in range(M):
        rules.append({"template": "stub_gen", "task": task["id"], "sample": j,
                      "output": fence(stub_source(task, j))})
    for j in range(M):
        pattern = task["sc"][j]
        good, bad = exp[j]
        for s in range(N):
            value = good if pattern[s] == "V" else bad
            rules.append({
                "template": "stub_complete", "task": task["id"],
                "contains": f"def test_{slug(task)}_{j}(", "sample": s,
                "output": fence(completion(task, j, value, s % 2)),
            })
    rules.append({"template": "holistic_test", "task": task["id"],
                  "output": fence(holistic(task, exp))})
    for z, chain in enumerate(chains(task)):
        rules.append({"template": "baseline_code", "task": task["id"], "sample": z,
                      "output": fence(version(task, chain[0], z, 0))})
        for r in range(len(chain) - 1):
            rules.append({
                "template": "verify_answer", "task": task["id"],
                "contains": marker(task, z, r),
                "output": answers("the result is wrong for boundary inputs"),
            })
            rules.append({
                "template": "guided_regen", "task": task["id"],
                "contains": marker(task, z, r),
                "output": fence(version(task, chain[r + 1], z, r + 1)),
            })
        last = len(chain) - 1
        rules.append({"template": "verify_answer", "task": task["id"],
                      "contains": marker(task, z, last), "output": answers(None)})
    return rules


# ---- build ----

def task_record(task):
    return {
        "task_id": task["id"],
        "description": task["description"],
        "entry_point": task["entry"],
        "signature": task["signature"],
        "setup_code": task.get("setup"),
        "ground_truth": task["truth"],
    }


VARIANTS = [(s, g) for s in ("SCTG", "TSTG", "HTG") for g in ("cove", "vanilla")]


def collect(convertest, tasks_path, mock_path, workdir):
    """(task_id -> set of tests, task_id -> set of candidate sources)"""
    tests, candidates = {}, {}
    for strategy, generator in VARIANTS:
        out = Path(workdir) / f"{strategy}-{generator}"
        cmd = [convertest, "generate", "--tasks", str(tasks_path),
               "--strategy", strategy, "--codegen", generator,
               "--m", str(M), "--n", str(N), "--z", str(Z),
               "--max-rounds", str(MAX_ROUNDS), "--provider", "mock",
               "--mock-script", str(mock_path), "--executor", "simulated",
               "--exec-fixture", "unused.json", "--out", str(out)]
        subprocess.run(cmd, check=True, stdout=subprocess.DEVNULL)
        for result in out.glob("*/tasks/*/result.json"):
            r = json.loads(result.read_text())
            tests.setdefault(r["task_id"], set()).update(t["source"] for t in r["tests"])
            candidates.setdefault(r["task_id"], set()).update(
                c["source"] for c in r["candidates"])
    return tests, candidates


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--convertest", required=True, help="path to the convertest binary")
    args = parser.parse_args()

    DATA.mkdir(exist_ok=True)
    tasks_path = DATA / "mini_benchmark.jsonl"
    mock_path = DATA / "mini_mock.json"
    exec_path = DATA / "mini_exec.json"

    tasks_path.write_text("".join(json.dumps(task_record(t)) + "\n" for t in TASKS))
    rules = []
    for task in TASKS:
        rules.extend(mock_rules(task))
    rules.append({"template": "verify_plan", "output": PLAN})
    mock_path.write_text(json.dumps({"rules": rules}, indent=1) + "\n")

    with tempfile.TemporaryDirectory() as workdir:
        tests, candidates = collect(os.path.abspath(args.convertest), tasks_path,
                                    mock_path, workdir)

    solutions, test_list, outcomes, mutant_entries = [], [], [], []
    index = {}

    def sol(text):
        if text not in index:
            index[text] = len(solutions)
            solutions.append(text)
        return index[text]

    for task in TASKS:
        setup = task.get("setup") or ""
        task_tests = sorted(tests.get(task["id"], ()))
        muts = mutants(task["truth"])
        sources = sorted(candidates.get(task["id"], ())) + [task["truth"]] + \
            [m["source"] for m in muts]
        for test in task_tests:
            ti = len(test_list)
            test_list.append(test)
            for source in sources:
                o = execute(source, setup, test)
                o.update(solution=sol(source), test=ti)
                outcomes.append(o)
        mutant_entries.append({
            "solution": sol(task["truth"]),
            "mutants": [{"mutant_id": m["mutant_id"], "solution": sol(m["source"]),
                         "operator": m["operator"], "location": m["location"]}
                        for m in muts],
        })

    fixture = {"solutions": solutions, "tests": test_list, "outcomes": outcomes,
               "mutants": mutant_entries}
    exec_path.write_text(json.dumps(fixture, indent=1) + "\n")
    print(f"{len(TASKS)} tasks, {len(test_list)} tests, {len(solutions)} solutions, "
          f"{len(outcomes)} outcomes")


if __name__ == "__main__":
    main()
