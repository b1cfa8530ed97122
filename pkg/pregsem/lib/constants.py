from rich.console import Console

# Instantiate a Rich console for fancy console output.
# Reference: https://rich.readthedocs.io/en/stable/console.html
console = Console()

# Name of the package whose bundled resources (e.g. the chips fixture) we read.
PACKAGE_NAME = "pregsem"

# Resource paths of the bundled chips fixture, relative to the package root.
CHIPS_WORLD_RESOURCE = "fixtures/chips/world.json"
CHIPS_LEXICON_RESOURCE = "fixtures/chips/lexicon.tsv"
CHIPS_POSET_RESOURCE = "fixtures/chips/poset.txt"
CHIPS_GOLDEN_RESOURCE = "fixtures/chips/golden.json"

# Exit codes of the `pregsem` command.
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE_FAILURE = 2
EXIT_EVALUATION_ERROR = 3
EXIT_LAW_FAILURE = 4
