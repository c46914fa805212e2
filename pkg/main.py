#!/usr/bin/env python3
"""
Point d'entrée principal du pipeline d'importance des attributs.

Ce script délègue à la ligne de commande du package :
    python main.py pipeline --config config.toml --method all
"""

import sys

from src.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
