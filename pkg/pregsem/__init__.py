from importlib.metadata import metadata, PackageNotFoundError


def get_package_metadata(key: str) -> str:
    r"""
    Returns metadata about the installed package, or an empty string when
    the package is not installed (e.g. when running from a source checkout).

    References:
    - https://docs.python.org/3/library/importlib.metadata.html#distribution-metadata
    - https://github.com/python-poetry/poetry/issues/273#issuecomment-570999678
    """
    metadata_value = ""
    try:
        package_metadata = metadata("pregsem")
        metadata_value = package_metadata.get(key)
    except PackageNotFoundError:
        pass
    return metadata_value
