"""
Setup script for the peierls toolkit: planar duals, minimal cut-set censuses,
path-count bounds and percolation cross-checks for planar graphs.
"""

from setuptools import setup, find_packages


EXTRAS_REQUIRE = {}
EXTRAS_REQUIRE["redis"] = ["aioredis==1.3.1"]


setup(
    name="peierls",
    version="0.1",
    description="Peierls bounds on p_c for planar graphs with polynomial growth",
    python_requires=">=3.8",
    package_dir={"": "src"},
    packages=find_packages("src"),
    scripts=["scripts/peierls"],
    install_requires=[
        "aiocache>=0.11.1,<0.13",
        "pydantic>=1.8,<2",
        "fastapi>=0.65,<0.100",
        "uvicorn>=0.12.2",
        "regex>=2020.1.8",
        "numpy>=1.19",
        "scipy>=1.5",
        "networkx>=2.5",
    ],
    extras_require=EXTRAS_REQUIRE,
)
