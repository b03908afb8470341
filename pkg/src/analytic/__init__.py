"""Analytic formulas package"""
