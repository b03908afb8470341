"""Scan package"""
