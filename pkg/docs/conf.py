#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# zonalprop documentation build configuration file.
#
# Only the values that differ from the sphinx-quickstart defaults are set.

import sys
import os

# Get the project root dir, which is the parent dir of this
cwd = os.getcwd()
project_root = os.path.dirname(cwd)

# Insert the project root dir as the first element in the PYTHONPATH.
# This lets us ensure that the source package is imported, and that its
# version is used.
sys.path.insert(0, project_root)

import zonalprop  # noqa: E402

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.viewcode', 'sphinx.ext.mathjax']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'zonalprop'
copyright = u"2019, Lars Solberg"
version = zonalprop.__version__
release = zonalprop.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'default'
html_static_path = ['_static']
htmlhelp_basename = 'zonalpropdoc'

latex_documents = [
    ('index', 'zonalprop.tex', u'zonalprop Documentation', u'Lars Solberg', 'manual'),
]

man_pages = [
    ('index', 'zonalprop', u'zonalprop Documentation', [u'Lars Solberg'], 1),
]

texinfo_documents = [
    ('index', 'zonalprop', u'zonalprop Documentation', u'Lars Solberg', 'zonalprop',
     'Analytic J2/J3 zonal orbit propagation.', 'Miscellaneous'),
]
