"""
Pydantic request, response and document schemas for scox
"""
