# -----------------------------------------------------------------------------
# File: setup.py
# -----------------------------------------------------------------------------

"""Configurazione per l'installazione del pacchetto trilnd."""

from setuptools import find_packages, setup

# Leggi il contenuto di README.md per la long_description
with open("README.md", "r", encoding="utf-8") as f:
    long_description = f.read()

# Leggi le dipendenze da requirements.txt (solo righe di requisito)
with open("requirements.txt", "r", encoding="utf-8") as f:
    requirements = [line.strip() for line in f if line.strip() and not line.startswith("#")]

setup(
    name="trilnd",
    version="0.1.0",
    description="trilnd - Triangolabilita' delle derivazioni localmente nilpotenti di K[x,y,z].",
    long_description=long_description,
    long_description_content_type="text/markdown",
    license="MIT",
    package_dir={"": "tri_lnd/src"},
    packages=find_packages(where="tri_lnd/src"),
    python_requires=">=3.10",
    install_requires=requirements,
    extras_require={"test": ["pytest>=7"]},
    entry_points={"console_scripts": ["trilnd = trilnd.cli.main:main"]},
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Typing :: Typed",
    ],
    keywords="computer-algebra, locally-nilpotent-derivations, groebner-bases, polynomial-automorphisms",
)
