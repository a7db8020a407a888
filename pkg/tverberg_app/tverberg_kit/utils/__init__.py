"""Utilities for documents, schema discovery, instance generation, rendering and trace storage."""
