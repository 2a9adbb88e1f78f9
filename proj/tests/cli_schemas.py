"""Runs every arion subcommand once and validates its JSON output against tools/schemas."""

import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    binary, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    failures = 0

    with tempfile.TemporaryDirectory() as tmp:
        tmp = pathlib.Path(tmp)
        params = tmp / "params.json"
        r1cs = tmp / "r1cs.json"
        witness = tmp / "witness.json"
        path = tmp / "path.json"

        def run(args, expect=0):
            proc = subprocess.run([binary, *args], capture_output=True, text=True)
            if proc.returncode != expect:
                raise RuntimeError(f"{args}: exit {proc.returncode}, stderr {proc.stderr}")
            return proc

        def check(name, text):
            nonlocal failures
            try:
                jsonschema.validate(json.loads(text), schemas[name])
                print(f"ok   {name}")
            except (jsonschema.ValidationError, json.JSONDecodeError) as e:
                failures += 1
                print(f"FAIL {name}: {e}")

        run(["gen-params", "--field", "bn254", "--out", str(params)])
        check("params", params.read_text())
        p = ["--params", str(params)]
        check("permute", run(["permute", *p, "--state", "1,2,3", "--json"]).stdout)
        check("hash", run(["hash", *p, "--message", "1,2,3", "--json"]).stdout)
        check("hash", run(["hash", *p, "--bytes", "616263", "--json"]).stdout)
        check("merkle-root", run(["merkle", "root", *p, "--leaves", "1,2,3,4"]).stdout)
        proof = run(["merkle", "prove", *p, "--leaves", "1,2,3,4", "--index", "1"]).stdout
        check("merkle-path", proof)
        path.write_text(proof)
        check("merkle-verify", run(["merkle", "verify", *p, "--path", str(path)]).stdout)
        check("count", run(["count", "--scheme", "plonk3", "--hash", "poseidon", "--n", "4", "--json"]).stdout)
        check("count", run(["count", "--scheme", "r1cs", "--n", "3", "--json"]).stdout)
        for scheme in ("r1cs", "plonk2", "plonk3"):
            check("count-table", run(["count", "--scheme", scheme, "--table", "--json"]).stdout)
        run(["r1cs-emit", *p, "--out", str(r1cs), "--witness-out", str(witness), "--message", "5,6"])
        check("r1cs", r1cs.read_text())
        check("witness", witness.read_text())
        check("r1cs-check", run(["r1cs-check", "--r1cs", str(r1cs), "--witness", str(witness)]).stdout)
        check("security", run(["estimate", *p, "--json"]).stdout)
        check("density", run(["lab", "density", "--p", "11", "--n", "2", "--d1", "3", "--d2", "3", "--seeds", "2", "--json"]).stdout)
        check("bijection", run(["lab", "bijection", "--p", "5", "--n", "2", "--d1", "3", "--d2", "3", "--json"]).stdout)
        check("mds", run(["lab", "mds", "--p", "131", "--n", "3", "--json"]).stdout)
        check("vectors", run(["vectors"]).stdout)
        check("error", run(["hash", *p, "--message", "zz"], expect=1).stderr)
        check("error", run([], expect=1).stderr)

    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
