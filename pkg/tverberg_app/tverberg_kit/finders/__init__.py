"""Certified witness searches over canonical candidate orders."""
from .tverberg import TverbergWitness, brute_force_all, complete_partition, find_tverberg3, verify_witness
from .vkf import VkfWitness, find_vkf3, verify_vkf

__all__ = [
    "TverbergWitness",
    "VkfWitness",
    "brute_force_all",
    "complete_partition",
    "find_tverberg3",
    "find_vkf3",
    "verify_vkf",
    "verify_witness",
]
