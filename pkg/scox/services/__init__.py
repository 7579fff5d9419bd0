"""Singular Coxeter services: cosets, expressions, relations, rewriting, complexes and webs"""
