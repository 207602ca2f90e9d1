"""
Service modules: path queries, the grid oracle, benchmarking, rendering and scenarios.
"""
