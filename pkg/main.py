#!/usr/bin/env python3
"""segprecision - precision of per-sample evaluation metrics.

Usage:
    python main.py estimate --input dice.csv --seed 42
    python main.py subsample --input dice.csv --sizes 10,20,30,50,100 --draws 100
    python main.py simulate
    python main.py plan --sigma 5 --width 1
    python main.py dice --pairs pairs.csv --labels 1,2 > dice.csv
    python main.py kde --input dice.csv
"""

from src.cli.app import cli

if __name__ == "__main__":
    cli()
