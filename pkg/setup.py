from setuptools import find_packages, setup

setup(
    name="easense",
    version="0.1.0",
    description="Hyperparameter sensitivity analysis (Morris, Sobol) for evolutionary algorithms",
    packages=find_packages("src"),
    package_dir={"": "src"},
    python_requires=">=3.9",
    install_requires=[
        "numpy>=1.24",
        "scipy>=1.10",
        "scikit-learn>=1.2",
        "pymoo>=0.6",
        "fastapi>=0.104.1",
        "uvicorn>=0.24.0",
        "websockets>=11.0.3",
        "pydantic>=2.0.0"
    ],
    extras_require={
        "dev": ["pytest>=7.0", "httpx>=0.24"],
    },
    entry_points={
        "console_scripts": [
            "easense=easense.cli:main",
        ],
    },
)
