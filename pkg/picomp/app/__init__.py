"""Compiler and decompiler for the λ / administrative / CPS / π family of calculi."""
