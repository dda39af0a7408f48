"""The command-line interface on the sample grammars.

Runs each subcommand in-process and shows its exit code.  The same calls
work from a shell as ``unarypl <command> ...`` or ``python -m unarypl``.
"""

from pathlib import Path

from unarypl.cli import main

DATA = Path(__file__).parent / "data"
odd = str(DATA / "odd.cfg")

calls = [
    ["regularize", odd, "--b", "3"],
    ["pump", odd, "--length", "9", "--witness", str(DATA / "odd_affine.txt")],
    ["tuples", str(DATA / "mod3.cfg")],
    ["verify", str(DATA / "two_or_three.cfg"), "--max", "500"],
    ["member", odd, "--length", "4"],
    ["family", "--b", "2"],
    ["pump", odd, "--b", "3", "--length", "2"],
    ["verify", "--batch", str(DATA)],
]
for argv in calls:
    print("$ unarypl " + " ".join(a.replace(str(DATA) + "/", "data/").replace(str(DATA), "data") for a in argv))
    code = main(argv)
    print(f"[exit {code}]\n")
