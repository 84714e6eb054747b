"""Build the extension with cargo, import it and run a few integrals."""

import json
import shutil
import subprocess
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build() -> Path:
    subprocess.run(
        ["cargo", "build", "--release", "-p", "gammaint-py", "--features", "extension-module"],
        cwd=ROOT,
        check=True,
    )
    lib = ROOT / "target" / "release" / "libgammaint_py.so"
    dest = Path(tempfile.mkdtemp()) / "gammaint_py.so"
    shutil.copy(lib, dest)
    return dest.parent


def main() -> int:
    sys.path.insert(0, str(build()))
    import gammaint_py as g

    cases = [
        ("exp(x)/x", [], "Ei(x) + C"),
        ("2*exp(2*x)/(2*x+3)", [], "exp(-3)*Ei(2*x+3) + C"),
        ("exp(-x^2)", [], "-(1/2)*Gamma(1/2, x^2) + C"),
        ("exp((alpha-1)*log(x)-x)", ["alpha"], "-Gamma(alpha, x) + C"),
    ]
    for expr, consts, expect in cases:
        a = g.integrate(expr, consts=consts)
        passed, summary = a.verify()
        assert a.status == "integrated", (expr, a.status)
        assert a.text == expect, (expr, a.text)
        assert passed, (expr, summary)
        print(f"{expr:28} {a.text:34} {summary}")

    doc = json.loads(g.integrate("exp(x)/x").json())
    assert doc["ei"] == [{"c": "1", "arg": "x"}], doc

    bad = g.integrate("exp((1/2)*log(2*exp(-x)/x))")
    assert bad.status == "unsupported" and bad.diagnostics, bad
    assert g.integrate("exp(x)/(x^2+1)").status == "no_gamma_form_found"
    assert g.structure("exp(2*x)", ["exp(x)"]) == "dependent: θ^2"
    text, passed, _ = g.verify("x*exp(x)")
    assert text == "(x-1)*exp(x) + C" and passed
    try:
        g.integrate("sin(x)")
    except ValueError as e:
        print(f"parse error reported: {e}")
    else:
        raise AssertionError("sin(x) should not parse")
    print("python smoke test passed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
