"""CLI subcommands; importing a module registers its tools."""
