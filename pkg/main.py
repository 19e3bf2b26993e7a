import os
import sys
# Lets `python main.py ...` run from a checkout without installing the package
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from wcnest.main import cli

if __name__ == '__main__':
    cli(prog_name='wcnest')
