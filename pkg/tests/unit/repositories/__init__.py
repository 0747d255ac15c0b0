"""
Unit tests for repositories (INI configs, dephasing tables, result CSVs)
"""
