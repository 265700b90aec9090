"""
Allow the package to be run as a module: python -m limit_bundle
"""
from limit_bundle.cli import main

if __name__ == "__main__":
    main()
