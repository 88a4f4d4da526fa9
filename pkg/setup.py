from setuptools import setup, find_packages

setup(
    name="coxforge",
    version="0.1.0",
    description="Exact signature, classification and faithfulness checks for Coxeter groups",
    long_description=open("README.md").read(),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests"]),
    install_requires=[
        "python-dotenv",
        "sympy",
        "mpmath",
        "networkx",
    ],
    extras_require={
        "test": ["numpy"],
    },
    python_requires=">=3.9",
    entry_points={
        "console_scripts": [
            "coxforge=coxforge.main:main",
        ]
    },
    classifiers=[
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
