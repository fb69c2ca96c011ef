"""Command-line front end of hqst: scenario files, reproduction commands and CSV output."""
