"""Print the h*-diamond, local diamond and r-local diamonds of a corpus case.

    python scripts/diamonds.py corpus/cube_split.json
"""
import sys

from mixedhstar.cli import render_diamonds
from mixedhstar.io import load_case

if __name__ == "__main__":
    for path in sys.argv[1:] or ["corpus/cube_split.json"]:
        print(f"== {path}")
        print(render_diamonds(load_case(path), "text"))
