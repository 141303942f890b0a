"""Concrete finite categories: modules over ``Z/n`` and ``M``-sets."""
