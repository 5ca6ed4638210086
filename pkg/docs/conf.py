# Configuration file for the Sphinx documentation builder.


# -- Path setup --------------------------------------------------------------
import datetime
import os
import sys

sys.path.insert(0, os.path.abspath(".."))

from rindler_corr.utils.const import DEFAULT_VERSION  # noqa: E402

# -- Project information -----------------------------------------------------

project = "rindler-corr"
copyright = f"{datetime.date.today().year}, rindler-corr developers"
author = "rindler-corr developers"
version = DEFAULT_VERSION
release = DEFAULT_VERSION

# -- General configuration ---------------------------------------------------

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",  # Google-style docstrings
    "sphinx.ext.viewcode",
    "sphinx.ext.autosummary",
    "sphinx.ext.mathjax",
]

autosummary_generate = True

autodoc_default_options = {
    "members": True,
    "show-inheritance": True,
    "no-special-members": True,
}

source_suffix = {
    ".rst": "restructuredtext",
}

# -- Options for HTML output -------------------------------------------------

html_theme = "furo"

exclude_patterns = ["_build", ".DS_Store", ".venv", ".pytest_cache"]

master_doc = "index"
