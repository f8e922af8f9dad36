"""Smoke test for the Python bindings. Exits non-zero on the first mismatch."""

import json
import sys

import grothendieck_py as g


def check(cond, message):
    if not cond:
        print(f"FAIL {message}")
        sys.exit(1)
    print(f"ok   {message}")


def main():
    names = g.commands()
    check("validate" in names and "base-check" in names, "command names are exposed")

    fixtures = {f: (code, text) for f, code, text in g.shipped_fixtures()}
    check(len(fixtures) > 0, "shipped fixtures are exposed")

    for name, (code, text) in sorted(fixtures.items()):
        out = g.run("validate", text)
        check(out["code"] == code, f"validate {name} exits {code}")
        lines = [json.loads(l) for l in out["report"].splitlines() if l]
        check(len(lines) == out["passed"] + out["failed"], f"{name} report has one line per check")

    _, walking = fixtures["walking-arrow.fx"]
    gr = g.run("gr", walking)
    check(gr["code"] == g.EXIT_PASS and gr["fixture"], "gr emits a fixture")
    check(g.run("validate", gr["fixture"])["code"] == g.EXIT_PASS, "the emitted total category validates")
    check(g.run("roundtrip", walking)["code"] == g.EXIT_PASS, "the round trip holds")

    _, hostile = fixtures["hostile-fake-coproduct.fx"]
    check(g.run("base-check", hostile, budget=20)["code"] == g.EXIT_FAIL, "base-check refutes a hostile base")

    bad = g.run("validate", "base: finset\n[category B\n")
    check(bad["code"] == g.EXIT_PARSE and bad["fixture"] is None, "a malformed fixture exits 2")
    check(g.run_file("validate", "/nonexistent.fx")["code"] == g.EXIT_PARSE, "a missing file exits 2")

    try:
        g.run("nope", walking)
        check(False, "an unknown command raises")
    except ValueError:
        check(True, "an unknown command raises")


if __name__ == "__main__":
    main()
