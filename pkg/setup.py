from setuptools import find_packages, setup

setup(
    name="superpattern-tools",
    description="Scientific claims as super-pattern instances: logic, model checking and corpus analysis.",
    version="0.1.0",
    packages=find_packages(exclude=["tests"]),
    python_requires=">=3.10",
    install_requires=["lark", "typer", "rdflib", "requests", 'tomli; python_version < "3.11"'],
    extras_require={
        "tests": ["pytest", "hypothesis"],
    },
    package_data={
        "superpattern_tools": [
            "grammars/*.lark",
        ],
    },
    entry_points={
        "console_scripts": ["superpattern=superpattern_tools.cli:app"],
    },
)
