#!/usr/bin/env python
"""
pst_network_cli.py - Command-line entry point without installation

Runs the same click group as the `pst-network` console script:
- analyze / audit: PST pairs, catalog claims
- route / verify: quantum routing tables
- build / certify: p-PST network construction
- xcheck: XX+YY Hamiltonian cross-check

Usage:
    python pst_network_cli.py analyze fixtures/q3.json
    python pst_network_cli.py --mode greedy route fixtures/routing_b_graph.json fixtures/routing_b_nets.json
"""

import sys
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables (PST_TOLERANCE, PST_MODE, ...)
load_dotenv()

# Add project root to path
project_root = Path(__file__).parent
sys.path.insert(0, str(project_root))

if __name__ == "__main__":
    try:
        from pst_network.cli.pst_cli import main
    except ImportError as e:
        # stdout carries command documents only
        print(f"❌ Import error: {e}", file=sys.stderr)
        print("📄 Install dependencies:  pip install -r requirements.txt", file=sys.stderr)
        sys.exit(1)

    try:
        main()
    except KeyboardInterrupt:
        print("\n⏹️  Stopped by user.", file=sys.stderr)
        sys.exit(130)
