"""
Entry point for the coxforge package.
"""

from coxforge.main import main

if __name__ == "__main__":
    main()
