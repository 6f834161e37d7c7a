//! Library surface of the `skan` command-line tool.
